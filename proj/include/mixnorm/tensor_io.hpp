#ifndef MIXNORM_TENSOR_IO_HPP
#define MIXNORM_TENSOR_IO_HPP

#include <complex>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixnorm/errors.hpp"
#include "mixnorm/tensor.hpp"

namespace mixnorm {

// Interchange format:
//   {"dims":[n_1,...,n_m], "field":"real"|"complex", "entries":[...]}
// entries are row-major; complex entries are [re, im] pairs.

inline nlohmann::json tensor_to_json(const RealTensor& T) {
  nlohmann::json j;
  j["dims"] = T.dims();
  j["field"] = "real";
  j["entries"] = T.entries();
  return j;
}

inline nlohmann::json tensor_to_json(const ComplexTensor& T) {
  nlohmann::json j;
  j["dims"] = T.dims();
  j["field"] = "complex";
  nlohmann::json entries = nlohmann::json::array();
  for (const std::complex<double>& z : T.entries())
    entries.push_back(nlohmann::json::array({z.real(), z.imag()}));
  j["entries"] = std::move(entries);
  return j;
}

inline nlohmann::json tensor_to_json(const TensorVariant& T) {
  return std::visit([](const auto& t) { return tensor_to_json(t); }, T);
}

inline TensorVariant tensor_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("field") || !j.contains("entries"))
    throw IoError("tensor json: need object with dims, field, entries");
  std::vector<std::int64_t> dims;
  try {
    dims = j.at("dims").get<std::vector<std::int64_t>>();
  } catch (const nlohmann::json::exception&) {
    throw IoError("tensor json: dims must be an integer array");
  }
  const std::string field = j.at("field").get<std::string>();
  const nlohmann::json& entries = j.at("entries");
  if (!entries.is_array()) throw IoError("tensor json: entries must be an array");
  if (field == "real") {
    std::vector<double> e;
    e.reserve(entries.size());
    for (const auto& v : entries) {
      if (!v.is_number()) throw IoError("tensor json: real entries must be numbers");
      e.push_back(v.get<double>());
    }
    return RealTensor(std::move(dims), std::move(e));
  }
  if (field == "complex") {
    std::vector<std::complex<double>> e;
    e.reserve(entries.size());
    for (const auto& v : entries) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw IoError("tensor json: complex entries must be [re, im] pairs");
      e.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    return ComplexTensor(std::move(dims), std::move(e));
  }
  throw IoError("tensor json: field must be 'real' or 'complex', got '" + field + "'");
}

inline void write_tensor_file(const std::string& path, const TensorVariant& T) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << tensor_to_json(T).dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

inline TensorVariant read_tensor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open tensor file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed json in " + path + ": " + e.what());
  }
  return tensor_from_json(j);
}

}  // namespace mixnorm

#endif  // MIXNORM_TENSOR_IO_HPP
