#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "einstab/errors.hpp"
#include "einstab/matrix.hpp"
#include "einstab/rational.hpp"

namespace einstab {

/// nlohmann::json with the default object container (std::map), so keys
/// serialize in sorted order.
using Json = nlohmann::json;

template <class T>
Json scalar_to_json(const T& v) {
  if constexpr (is_exact_v<T>) {
    if (denominator(v) == 1 &&
        numerator(v) >= std::numeric_limits<long long>::min() &&
        numerator(v) <= std::numeric_limits<long long>::max())
      return Json(numerator(v).template convert_to<long long>());
    return Json(to_string(v));
  } else {
    return Json(v);
  }
}

template <class T>
T scalar_from_json(const Json& j, const std::string& field) {
  if (j.is_string()) {
    const Rational r = parse_rational(j.get<std::string>());
    if constexpr (is_exact_v<T>)
      return r;
    else
      return to_double(r);
  }
  if (j.is_number_integer()) {
    if constexpr (is_exact_v<T>)
      return Rational(j.get<long long>());
    else
      return static_cast<double>(j.get<long long>());
  }
  if (j.is_number_float()) {
    if constexpr (is_exact_v<T>)
      return rational_from_double(j.get<double>());
    else
      return j.get<double>();
  }
  throw SchemaError("field '" + field + "' must be a number or a 'p/q' string");
}

template <class T>
Json vector_to_json(const std::vector<T>& v) {
  Json a = Json::array();
  for (const T& x : v) a.push_back(scalar_to_json(x));
  return a;
}

template <class T>
std::vector<T> vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array())
    throw SchemaError("field '" + field + "' must be an array");
  std::vector<T> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(scalar_from_json<T>(x, field));
  return out;
}

template <class T>
Json matrix_to_json(const Mat<T>& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
Mat<T> matrix_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw SchemaError("field '" + field +
                      "' must be a row-major array of arrays");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j.front().size());
  Mat<T> m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[static_cast<std::size_t>(i)].size()) != cols)
      throw SchemaError("field '" + field + "' has ragged rows");
    for (int c = 0; c < cols; ++c)
      m.at(i, c) = scalar_from_json<T>(
          j[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)], field);
  }
  return m;
}

inline Json inertia_to_json(const Inertia& in) {
  return Json{{"n_neg", in.n_neg}, {"n_zero", in.n_zero}, {"n_pos", in.n_pos}};
}

namespace detail {

inline void dump_canonical_impl(const Json& j, std::string& out, int indent,
                                int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + Json(it.key()).dump() + ": ";
        dump_canonical_impl(it.value(), out, indent, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_canonical_impl(v, out, indent, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

/// Deterministic serialization: sorted keys (by construction), floats
/// rendered with 17 significant digits, two-space indentation.
inline std::string dump_canonical(const Json& j, int indent = 2) {
  std::string out;
  detail::dump_canonical_impl(j, out, indent, 0);
  out += "\n";
  return out;
}

}  // namespace einstab
