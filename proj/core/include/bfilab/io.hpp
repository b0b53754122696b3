#ifndef BFILAB_IO_HPP
#define BFILAB_IO_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace bfilab {

// Canonical shortest round-trip text form of a double; the basis of the
// byte-reproducibility contract for CSV output.
std::string format_double(double v);

// RFC 4180 field quoting (quotes applied only when needed).
std::string csv_escape(const std::string& field);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

}  // namespace bfilab

#endif  // BFILAB_IO_HPP
