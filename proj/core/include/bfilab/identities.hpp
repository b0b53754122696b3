#ifndef BFILAB_IDENTITIES_HPP
#define BFILAB_IDENTITIES_HPP

#include <cstdint>
#include <map>

#include "bfilab/arith.hpp"
#include "bfilab/rational.hpp"

namespace bfilab {

// Result of checking sum_{d|r} f(d) g(d) = prod_{p|r}(1 + f(p)) *
// sum_{p|r} g(p) f(p) / (1 + f(p)) for multiplicative f and additive g,
// in exact rationals. lhs comes from divisor enumeration, rhs from the
// closed form.
struct MultAdditiveCheck {
  Rational lhs;
  Rational rhs;
  bool equal = false;
};

// r squarefree; f and g give values on the primes dividing r. Values with
// f(p) = -1 hit the closed form's pole and are a domain error.
MultAdditiveCheck mult_additive_identity_check(
    uint64_t r, const std::map<uint64_t, Rational>& f,
    const std::map<uint64_t, Rational>& g);

// Both sides of C_i(a,r)/r = sum_{d|r} mu(d) C_i(ad), i = 1, 2, reduced to
// exact rational data. Dividing by the shared transcendental prefactor
// C_i-style C1(a) leaves, for i = 1, a single rational per side; for i = 2
// each side is a rational combination
//     unit * (gamma - sum_p log p/(p^2-p+1)) + sum_{p | ar} logs[p] * log p,
// and equality of all coefficients is the exact identity (the basis values
// are not compared numerically). `lhs`/`rhs` carry the unit coefficients.
struct ConvolutionCheck {
  Rational lhs;
  Rational rhs;
  std::map<uint64_t, Rational> lhs_logs;
  std::map<uint64_t, Rational> rhs_logs;
  bool equal = false;
};

// Requires r squarefree and coprime to a, i in {1, 2}.
ConvolutionCheck mobius_convolution_check(int64_t a, uint64_t r, int i);

}  // namespace bfilab

#endif  // BFILAB_IDENTITIES_HPP
