#include "stiffkit/code_io.hpp"

#include <fstream>

namespace stiffkit {

using nlohmann::json;

json code_to_json(const Code& code) {
  json doc;
  doc["name"] = code_name(code);
  doc["ambient_dim"] = ambient_dim(code);
  if (const auto* lc = std::get_if<LatticeCode>(&code)) {
    doc["norm_sq"] = lc->norm_sq();
    json points = json::array();
    for (std::size_t i = 0; i < lc->size(); ++i) {
      auto p = lc->point(i);
      points.push_back(std::vector<std::int64_t>(p.begin(), p.end()));
    }
    doc["points"] = std::move(points);
  } else {
    const auto& fc = std::get<FloatCode>(code);
    json points = json::array();
    for (std::size_t i = 0; i < fc.size(); ++i) {
      auto p = fc.point(i);
      points.push_back(std::vector<double>(p.begin(), p.end()));
    }
    doc["points_decimal"] = std::move(points);
    doc["tolerance"] = fc.tolerance();
  }
  return doc;
}

Code code_from_json(const json& doc) {
  if (!doc.is_object()) throw FormatError("code file must hold a JSON object");
  std::string name = doc.value("name", std::string("unnamed"));
  try {
    if (doc.contains("points")) {
      const auto& pts = doc.at("points");
      if (!pts.is_array() || pts.empty()) throw FormatError("'points' must be a non-empty array");
      int dim = doc.contains("ambient_dim") ? doc.at("ambient_dim").get<int>()
                                            : static_cast<int>(pts.at(0).size());
      std::vector<std::int64_t> coords;
      for (const auto& p : pts) {
        if (!p.is_array() || static_cast<int>(p.size()) != dim)
          throw FormatError("every point must be an array of " + std::to_string(dim) + " integers");
        for (const auto& x : p) {
          if (!x.is_number_integer()) throw FormatError("exact points must have integer coordinates");
          coords.push_back(x.get<std::int64_t>());
        }
      }
      if (doc.contains("norm_sq"))
        return LatticeCode(name, dim, doc.at("norm_sq").get<std::int64_t>(), std::move(coords));
      return LatticeCode::from_points(name, dim, std::move(coords));
    }
    if (doc.contains("points_decimal")) {
      const auto& pts = doc.at("points_decimal");
      if (!pts.is_array() || pts.empty()) throw FormatError("'points_decimal' must be a non-empty array");
      int dim = doc.contains("ambient_dim") ? doc.at("ambient_dim").get<int>()
                                            : static_cast<int>(pts.at(0).size());
      double tol = doc.value("tolerance", 1e-9);
      std::vector<double> coords;
      for (const auto& p : pts) {
        if (!p.is_array() || static_cast<int>(p.size()) != dim)
          throw FormatError("every point must be an array of " + std::to_string(dim) + " numbers");
        for (const auto& x : p) {
          if (!x.is_number()) throw FormatError("decimal points must have numeric coordinates");
          coords.push_back(x.get<double>());
        }
      }
      return FloatCode(name, dim, std::move(coords), tol);
    }
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("invalid code: ") + e.what());
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed code file: ") + e.what());
  }
  throw FormatError("code file needs 'points' or 'points_decimal'");
}

void save_code(const Code& code, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << code_to_json(code).dump(1) << '\n';
}

Code load_code(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return code_from_json(doc);
}

}  // namespace stiffkit
