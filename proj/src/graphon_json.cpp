#include "graphon_lab/graphon_json.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <system_error>
#include <utility>

namespace graphon_lab {

using nlohmann::json;

std::string exact_decimal(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double read_real(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    double x = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw FormatError(path, "'" + s + "' is not a decimal number");
    }
    return x;
  }
  throw FormatError(path, "expected a number or decimal string");
}

namespace {

const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw FormatError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(path + "/" + key, "missing field");
  return *it;
}

std::vector<double> read_vector(const json& j, const std::string& path) {
  if (!j.is_array()) throw FormatError(path, "expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_real(j[i], path + "/" + std::to_string(i)));
  return out;
}

std::vector<std::vector<double>> read_matrix(const json& j, const std::string& path) {
  if (!j.is_array()) throw FormatError(path, "expected an array of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(read_vector(j[i], path + "/" + std::to_string(i)));
  return rows;
}

json write_vector(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(exact_decimal(x));
  return out;
}

json write_matrix(const SymmetricMatrix& m) {
  json out = json::array();
  for (const auto& row : m.rows()) out.push_back(write_vector(row));
  return out;
}

std::string variant_of(const json& j, const std::string& path) {
  const auto& v = field(j, path, "variant");
  if (!v.is_string()) throw FormatError(path + "/variant", "expected a string");
  return v.get<std::string>();
}

// Factory validation errors carry no path; attach it here.
template <class F>
auto with_path(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const DomainError& e) {
    throw FormatError(path, e.what());
  }
}

std::vector<std::vector<double>> grid_values(const json& j, const std::string& path) {
  auto values = read_matrix(field(j, path, "values"), path + "/values");
  if (j.contains("resolution")) {
    const auto& r = j["resolution"];
    if (!r.is_number_integer() || r.get<std::int64_t>() < 0 ||
        r.get<std::size_t>() != values.size()) {
      throw FormatError(path + "/resolution", "must equal the number of rows in values");
    }
  }
  return values;
}

}  // namespace

json to_json(const Graphon& g) {
  json out;
  out["variant"] = std::string(g.name());
  if (const auto* c = std::get_if<ConstantGraphon>(&g.variant())) {
    out["p"] = c->p;
  } else if (const auto* s = std::get_if<StepGraphon>(&g.variant())) {
    out["blockMeasures"] = write_vector(s->measures);
    out["values"] = write_matrix(s->values);
  } else if (const auto* p = std::get_if<PowerProductGraphon>(&g.variant())) {
    out["t"] = p->t;
  } else if (const auto* gr = std::get_if<GridGraphon>(&g.variant())) {
    out["resolution"] = gr->resolution();
    out["values"] = write_matrix(gr->values);
  }
  return out;
}

json to_json(const Kernel& k) {
  json out;
  out["variant"] = std::string(k.name());
  if (const auto* c = std::get_if<ConstantKernel>(&k.variant())) {
    out["lambda"] = c->lambda;
  } else if (const auto* s = std::get_if<StepKernel>(&k.variant())) {
    out["blockMeasures"] = write_vector(s->measures);
    out["values"] = write_matrix(s->values);
  } else if (const auto* gr = std::get_if<GridKernel>(&k.variant())) {
    out["resolution"] = gr->resolution();
    out["values"] = write_matrix(gr->values);
  }
  return out;
}

Graphon graphon_from_json(const json& j, const std::string& path) {
  const std::string variant = variant_of(j, path);
  return with_path(path, [&] {
    if (variant == "Constant") return Graphon::constant(read_real(field(j, path, "p"), path + "/p"));
    if (variant == "StepFunction") {
      auto measures = read_vector(field(j, path, "blockMeasures"), path + "/blockMeasures");
      auto values = read_matrix(field(j, path, "values"), path + "/values");
      return Graphon::step(std::move(measures), values);
    }
    if (variant == "PowerProduct") {
      return Graphon::power_product(read_real(field(j, path, "t"), path + "/t"));
    }
    if (variant == "U1") return Graphon::u1();
    if (variant == "U2") return Graphon::u2();
    if (variant == "Grid") return Graphon::grid(grid_values(j, path));
    throw FormatError(path + "/variant", "unknown graphon variant '" + variant + "'");
  });
}

Kernel kernel_from_json(const json& j, const std::string& path) {
  const std::string variant = variant_of(j, path);
  return with_path(path, [&] {
    if (variant == "Constant") {
      return Kernel::constant(read_real(field(j, path, "lambda"), path + "/lambda"));
    }
    if (variant == "StepFunction") {
      auto measures = read_vector(field(j, path, "blockMeasures"), path + "/blockMeasures");
      auto values = read_matrix(field(j, path, "values"), path + "/values");
      return Kernel::step(std::move(measures), values);
    }
    if (variant == "Grid") return Kernel::grid(grid_values(j, path));
    throw FormatError(path + "/variant", "unknown kernel variant '" + variant + "'");
  });
}

}  // namespace graphon_lab
