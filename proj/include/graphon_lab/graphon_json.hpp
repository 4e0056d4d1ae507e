#pragma once

// JSON descriptions of graphons and kernels:
//   {"variant": "Constant", "p": 0.3}
//   {"variant": "StepFunction", "blockMeasures": ["0.5", "0.5"],
//    "values": [["0.2", "0.4"], ["0.4", "0.8"]]}
//   {"variant": "PowerProduct", "t": 2}
//   {"variant": "U1"}, {"variant": "U2"}
//   {"variant": "Grid", "resolution": 2, "values": [[...], [...]]}
// Kernels use the same layout with "lambda" in place of "p" and without
// the analytic variants. Matrices and measures are written as decimal
// strings (shortest round-trip form) so that doubles survive exactly;
// plain JSON numbers are accepted on input.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "graphon_lab/graphon.hpp"

namespace graphon_lab {

/// Malformed document. The message starts with the JSON path of the
/// offending field.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

nlohmann::json to_json(const Graphon& g);
nlohmann::json to_json(const Kernel& k);

Graphon graphon_from_json(const nlohmann::json& j, const std::string& path = "");
Kernel kernel_from_json(const nlohmann::json& j, const std::string& path = "");

/// Shortest decimal string that parses back to exactly `x`.
std::string exact_decimal(double x);

/// Reads a number given either as a JSON number or a decimal string.
double read_real(const nlohmann::json& j, const std::string& path);

}  // namespace graphon_lab
