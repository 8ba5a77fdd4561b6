#include "filldist/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "filldist/errors.hpp"

namespace filldist {

using nlohmann::json;

double round12(double value) { return std::stod(format12(value)); }

std::string format12(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) throw IoError("read failure: " + path);
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("write failure: " + path);
}

namespace {

json parse_or_throw(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw IoError("malformed JSON");
  return j;
}

}  // namespace

std::string complex_to_json(const Complex2& X) {
  json faces = json::array();
  for (const Triangle& t : X.faces()) faces.push_back({t.a, t.b, t.c});
  json j{{"n", X.n()}, {"faces", std::move(faces)}};
  return j.dump();
}

Complex2 parse_complex_json(const std::string& text) {
  json j = parse_or_throw(text);
  if (!j.is_object() || !j.contains("n") || !j.contains("faces") ||
      !j["n"].is_number_integer() || !j["faces"].is_array()) {
    throw IoError("complex JSON must be {\"n\": int, \"faces\": [[i,j,k],...]}");
  }
  int n = j["n"].get<int>();
  if (n < 3) throw IoError("complex JSON: n must be at least 3");
  std::vector<Triangle> faces;
  Triangle prev{-1, -1, -1};
  for (const json& item : j["faces"]) {
    if (!item.is_array() || item.size() != 3 ||
        !item[0].is_number_integer() || !item[1].is_number_integer() ||
        !item[2].is_number_integer()) {
      throw IoError("complex JSON: each face must be a triple of ints");
    }
    int a = item[0].get<int>();
    int b = item[1].get<int>();
    int c = item[2].get<int>();
    if (!(0 <= a && a < b && b < c && c < n)) {
      throw IoError("complex JSON: face not strictly increasing in range");
    }
    Triangle t{a, b, c};
    if (!faces.empty() && !(prev < t)) {
      throw IoError("complex JSON: face list not sorted or has duplicates");
    }
    prev = t;
    faces.push_back(t);
  }
  return Complex2(n, std::move(faces));
}

Complex2 read_complex_json(const std::string& path) {
  return parse_complex_json(read_text_file(path));
}

void write_complex_json(const Complex2& X, const std::string& path) {
  write_text_file(path, complex_to_json(X) + "\n");
}

std::string embedding_to_json(const Embedding& emb) {
  json coords = json::array();
  for (int v = 0; v < emb.n; ++v) {
    json row = json::array();
    for (int d = 0; d < emb.dim; ++d) row.push_back(round12(emb.coords(v, d)));
    coords.push_back(std::move(row));
  }
  json j{{"n", emb.n}, {"dim", emb.dim}, {"coords", std::move(coords)}};
  return j.dump();
}

Embedding parse_embedding_json(const std::string& text) {
  json j = parse_or_throw(text);
  if (!j.is_object() || !j.contains("n") || !j.contains("dim") ||
      !j.contains("coords") || !j["n"].is_number_integer() ||
      !j["dim"].is_number_integer() || !j["coords"].is_array()) {
    throw IoError(
        "embedding JSON must be {\"n\": int, \"dim\": int, \"coords\": [[...],...]}");
  }
  int n = j["n"].get<int>();
  int dim = j["dim"].get<int>();
  if (n < 1 || dim < 1) throw IoError("embedding JSON: bad dimensions");
  if (static_cast<int>(j["coords"].size()) != n) {
    throw IoError("embedding JSON: coords must have one row per vertex");
  }
  Eigen::MatrixXd coords(n, dim);
  for (int v = 0; v < n; ++v) {
    const json& row = j["coords"][static_cast<std::size_t>(v)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw IoError("embedding JSON: coordinate row has wrong length");
    }
    for (int d = 0; d < dim; ++d) {
      const json& cell = row[static_cast<std::size_t>(d)];
      if (!cell.is_number()) {
        throw IoError("embedding JSON: coordinates must be numbers");
      }
      coords(v, d) = cell.get<double>();
    }
  }
  return Embedding{n, dim, std::move(coords)};
}

Embedding read_embedding_json(const std::string& path) {
  return parse_embedding_json(read_text_file(path));
}

void write_embedding_json(const Embedding& emb, const std::string& path) {
  write_text_file(path, embedding_to_json(emb) + "\n");
}

std::string fill_summary_to_json(const FillSummary& summary) {
  json sizes = json::array();
  for (const auto& s : summary.sizes) {
    if (s) {
      sizes.push_back(*s);
    } else {
      sizes.push_back(nullptr);
    }
  }
  json j;
  j["sizes"] = std::move(sizes);
  j["infeasible"] = summary.infeasible;
  j["min"] = summary.min ? json(*summary.min) : json(nullptr);
  j["max"] = summary.max ? json(*summary.max) : json(nullptr);
  j["sum_sq"] = summary.sum_sq ? json(round12(*summary.sum_sq)) : json(nullptr);
  return j.dump();
}

std::string spectral_report_to_json(const SpectralReport& report) {
  json j;
  j["lambda1"] = round12(report.lambda1);
  j["lambda0"] = round12(report.lambda0);
  j["betti1"] = report.betti1;
  j["subspace_dim"] = report.subspace_dim;
  j["normalized_lambda1"] = report.normalized_lambda1
                                ? json(round12(*report.normalized_lambda1))
                                : json(nullptr);
  return j.dump();
}

std::string inequality_report_to_json(const InequalityReport& report) {
  json j;
  j["lhs"] = round12(report.lhs);
  j["rhs"] = round12(report.rhs);
  j["scale"] = round12(report.scale);
  j["psi_norm_sq"] = round12(report.psi_norm_sq);
  j["dpsi_norm_sq"] = round12(report.dpsi_norm_sq);
  j["holds"] = report.holds;
  return j.dump();
}

std::string certificate_to_json(const Certificate& cert) {
  json j;
  j["value"] = round12(cert.value);
  j["lambda1"] = round12(cert.lambda1);
  j["face_count"] = cert.face_count;
  j["fill_sum_sq"] = round12(cert.fill_sum_sq);
  return j.dump();
}

}  // namespace filldist
