#include "chenbounds/serialize.hpp"

#include <string>
#include <vector>

namespace chen {

namespace {

Json flat_row_major(const Mat& m) {
  Json arr = Json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
  return arr;
}

Mat from_flat(const Json& arr, int rows, int cols, const char* what) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != rows * cols)
    throw Error(Errc::BadSpec, std::string(what) + ": expected " + std::to_string(rows * cols) +
                                   " entries");
  Mat m(rows, cols);
  int k = 0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = arr[k++].get<double>();
  return m;
}

Json row_list(const Mat& m) {
  Json arr = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    arr.push_back(row);
  }
  return arr;
}

Mat from_row_list(const Json& arr, const char* what) {
  if (!arr.is_array() || arr.empty() || !arr[0].is_array())
    throw Error(Errc::BadSpec, std::string(what) + ": expected a row list");
  const int rows = static_cast<int>(arr.size());
  const int cols = static_cast<int>(arr[0].size());
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(arr[i].size()) != cols)
      throw Error(Errc::BadSpec, std::string(what) + ": ragged rows");
    for (int j = 0; j < cols; ++j) m(i, j) = arr[i][j].get<double>();
  }
  return m;
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(Errc::BadSpec, std::string("missing field: ") + key);
  return *it;
}

}  // namespace

Json ambient_to_json(const AmbientPoint& a) {
  Json j;
  j["m"] = a.m;
  j["f"] = Json::array({a.f.f1, a.f.f2, a.f.f3, a.f.f4, a.f.f51, a.f.f52, a.f.f6});
  j["phi"] = flat_row_major(a.phi.mat());
  j["h"] = flat_row_major(a.h.mat());
  return j;
}

AmbientPoint ambient_from_json(const Json& j) {
  AmbientPoint a;
  a.m = field(j, "m").get<int>();
  if (a.m < 1 || 2 * a.m + 1 > kMaxDim) throw Error(Errc::BadSpec, "m out of range");
  const Json& f = field(j, "f");
  if (!f.is_array() || f.size() != 7) throw Error(Errc::BadSpec, "f: expected 7 reals");
  a.f = FCoefficients{f[0].get<double>(), f[1].get<double>(), f[2].get<double>(),
                      f[3].get<double>(), f[4].get<double>(), f[5].get<double>(),
                      f[6].get<double>()};
  const int d = a.dim();
  a.phi = SkewOp(from_flat(field(j, "phi"), d, d, "phi"));
  a.h = SymOp(from_flat(field(j, "h"), d, d, "h"));
  return a;
}

Json instance_to_json(const SubmanifoldPoint& s) {
  Json j;
  j["schema_version"] = 1;
  j["ambient"] = ambient_to_json(s.ambient());
  j["n"] = s.n();
  j["tangent_frame"] = row_list(s.tangent_frame());
  j["normal_frame"] = row_list(s.normal_frame());
  Json sig = Json::object();
  for (int r = 0; r < s.num_normals() - 1; ++r)
    sig[std::to_string(r)] = row_list(s.sigma()[r].mat());
  j["sigma"] = sig;
  return j;
}

SubmanifoldPoint instance_from_json(const Json& j) {
  if (field(j, "schema_version").get<int>() != 1)
    throw Error(Errc::BadSpec, "unsupported schema_version");
  AmbientPoint a = ambient_from_json(field(j, "ambient"));
  const int n = field(j, "n").get<int>();
  Mat tf = from_row_list(field(j, "tangent_frame"), "tangent_frame");
  Mat nf = from_row_list(field(j, "normal_frame"), "normal_frame");
  if (tf.rows() != a.dim() || tf.cols() != n || nf.rows() != a.dim() ||
      nf.cols() != a.dim() - n)
    throw Error(Errc::DimensionMismatch, "frame shapes inconsistent with m and n");
  const Json& sig = field(j, "sigma");
  std::vector<Mat> sigma_free;
  sigma_free.reserve(a.dim() - n - 1);
  for (int r = 0; r < a.dim() - n - 1; ++r) {
    auto it = sig.find(std::to_string(r));
    if (it == sig.end())
      throw Error(Errc::BadSpec, "sigma: missing slice " + std::to_string(r));
    sigma_free.push_back(from_row_list(*it, "sigma slice"));
  }
  return build_submanifold(a, tf, nf, sigma_free);
}

Json report_to_json(const InequalityReport& r) {
  Json j;
  j["name"] = r.name;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack;
  j["equality"] = r.equality;
  j["mode"] = to_string(r.mode);
  Json w = Json::object();
  if (r.witness_subspace.size() > 0) w["subspace"] = row_list(r.witness_subspace);
  if (r.witness_vector.size() > 0) {
    Json v = Json::array();
    for (int i = 0; i < r.witness_vector.size(); ++i) v.push_back(r.witness_vector(i));
    w["vector"] = v;
  }
  if (r.exact_chain_lhs) w["exact_chain_lhs"] = *r.exact_chain_lhs;
  j["witness"] = w;
  j["tolerances"] =
      Json{{"eq_tol", r.tol.eq_tol}, {"slack_tol", r.tol.slack_tol}, {"form_tol", r.tol.form_tol}};
  return j;
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace chen
