// Command-line driver: instance generation, check suites, parameter sweeps,
// brute-force oracle runs, and JSON-to-CSV report conversion.
//
// Exit codes: 0 success, 2 validation failure, 3 inequality violation in an
// exact-mode check, 4 I/O failure. Conservative-mode results never affect the
// exit status. All output is byte-deterministic for fixed flags and seed.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "chenbounds/forge.hpp"
#include "chenbounds/serialize.hpp"

namespace fs = std::filesystem;
using namespace chen;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitViolation = 3;
constexpr int kExitIo = 4;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot open " + p.string() + " for writing");
  out << bytes;
  if (!out) throw Error(Errc::IoError, "short write to " + p.string());
}

// shortest round-trip formatting, same as the JSON dump, so CSV and JSON
// agree byte-for-byte on every value
std::string num(double v) { return Json(v).dump(); }

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : s) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
  return h;
}

std::uint64_t env_seed_default() {
  if (const char* e = std::getenv("CHEN_BOUNDS_SEED")) return std::strtoull(e, nullptr, 10);
  return 0;
}

struct GenFlags {
  int m = 3, n = 3, count = 1;
  std::string mode = "general";
  double sigma_scale = 1.0;
  std::vector<double> f_explicit;      // 7 values
  std::vector<double> kappa_mu;        // c, kappa, mu
  std::vector<double> non_sasakian;    // kappa, mu
  std::vector<double> h_eigenvalues;   // m values
  bool plain_frame = false;            // suppress the in-pair rotation
  std::uint64_t seed = env_seed_default();
};

void add_gen_flags(CLI::App* cmd, GenFlags& g) {
  cmd->add_option("--m", g.m, "ambient half-dimension (ambient dim 2m+1)");
  cmd->add_option("--n", g.n, "submanifold dimension");
  cmd->add_option("--count", g.count, "number of instances");
  cmd->add_option("--mode", g.mode, "general|sasakian")
      ->check(CLI::IsMember({"general", "sasakian"}));
  cmd->add_option("--sigma-scale", g.sigma_scale, "free second-fundamental-form entry scale");
  cmd->add_option("--f", g.f_explicit, "explicit f1,f2,f3,f4,f51,f52,f6")->expected(7);
  cmd->add_option("--kappa-mu", g.kappa_mu, "c,kappa,mu coefficient source")->expected(3);
  cmd->add_option("--non-sasakian", g.non_sasakian, "kappa,mu divided-form source (kappa != 1)")
      ->expected(2);
  cmd->add_option("--h-eigenvalues", g.h_eigenvalues, "m eigenvalues for the h tensor");
  cmd->add_flag("--plain-frame", g.plain_frame, "use the unrotated adapted frame");
  cmd->add_option("--seed", g.seed, "RNG seed (default: CHEN_BOUNDS_SEED env, then 0)");
}

GeneratorSpec spec_from_flags(const GenFlags& g) {
  GeneratorSpec spec;
  spec.m = g.m;
  spec.n = g.n;
  spec.mode = g.mode == "sasakian" ? GeneratorMode::Sasakian : GeneratorMode::General;
  spec.sigma_scale = g.sigma_scale;
  spec.h_eigenvalues = g.h_eigenvalues;
  spec.seed = g.seed;
  int sources = (!g.f_explicit.empty()) + (!g.kappa_mu.empty()) + (!g.non_sasakian.empty());
  if (sources > 1) throw Error(Errc::BadSpec, "at most one coefficient source");
  if (!g.f_explicit.empty())
    spec.f_source = FCoefficients{g.f_explicit[0], g.f_explicit[1], g.f_explicit[2],
                                  g.f_explicit[3], g.f_explicit[4], g.f_explicit[5],
                                  g.f_explicit[6]};
  else if (!g.kappa_mu.empty())
    spec.f_source = KappaMuSource{g.kappa_mu[0], g.kappa_mu[1], g.kappa_mu[2]};
  else if (!g.non_sasakian.empty())
    spec.f_source = NonSasakianSource{g.non_sasakian[0], g.non_sasakian[1]};
  return spec;
}

Json spec_to_json(const GeneratorSpec& spec, const GenFlags& g) {
  Json j;
  j["m"] = spec.m;
  j["n"] = spec.n;
  j["mode"] = g.mode;
  j["sigma_scale"] = spec.sigma_scale;
  if (!g.f_explicit.empty()) j["f"] = g.f_explicit;
  if (!g.kappa_mu.empty()) j["kappa_mu"] = g.kappa_mu;
  if (!g.non_sasakian.empty()) j["non_sasakian"] = g.non_sasakian;
  if (!g.h_eigenvalues.empty()) j["h_eigenvalues"] = g.h_eigenvalues;
  j["plain_frame"] = g.plain_frame;
  return j;
}

SubmanifoldPoint build_instance(const GeneratorSpec& base, const GenFlags& g, int index) {
  GeneratorSpec spec = base;
  spec.seed = Rng(base.seed).derive(static_cast<std::uint64_t>(index)).next_u64();
  AmbientPoint a = make_ambient(spec);
  return make_random_submanifold(a, spec.n, spec.sigma_scale, spec.seed, !g.plain_frame);
}

int cmd_gen(const GenFlags& g, const std::string& out_dir) {
  GeneratorSpec base = spec_from_flags(g);
  fs::create_directories(out_dir);
  Json manifest;
  manifest["schema_version"] = 1;
  Json spec_json = spec_to_json(base, g);
  spec_json["seed"] = g.seed;
  spec_json["count"] = g.count;
  manifest["spec"] = spec_json;
  char hexbuf[32];
  std::snprintf(hexbuf, sizeof(hexbuf), "%016llx",
                static_cast<unsigned long long>(fnv1a(dump_canonical(spec_json))));
  manifest["spec_hash"] = std::string(hexbuf);
  Json files = Json::array();
  for (int i = 0; i < g.count; ++i) {
    SubmanifoldPoint s = build_instance(base, g, i);
    char name[64];
    std::snprintf(name, sizeof(name), "instance_%04d.json", i);
    write_file(fs::path(out_dir) / name, dump_canonical(instance_to_json(s)));
    Json entry;
    entry["file"] = std::string(name);
    entry["seed"] = Rng(g.seed).derive(static_cast<std::uint64_t>(i)).next_u64();
    files.push_back(entry);
  }
  manifest["instances"] = files;
  write_file(fs::path(out_dir) / "manifest.json", dump_canonical(manifest));
  return kExitOk;
}

struct CheckFlags {
  std::vector<std::string> inputs;
  std::string out_json, out_csv;
  std::vector<std::string> checks;  // empty: all
  int workers = 1;
  int planes = 16, vectors = 16, tuples = 8;
  SearchBudget budget;
  CheckTolerances tol;
  std::uint64_t seed = env_seed_default();
};

void add_check_sampling_flags(CLI::App* cmd, CheckFlags& c) {
  cmd->add_option("--planes", c.planes, "random plane witnesses per instance");
  cmd->add_option("--vectors", c.vectors, "random unit-vector witnesses per instance");
  cmd->add_option("--tuples", c.tuples, "random orthogonal tuples per tuple shape");
  cmd->add_option("--samples", c.budget.samples, "search budget: samples");
  cmd->add_option("--multistarts", c.budget.multistarts, "search budget: refinement starts");
  cmd->add_option("--step-tol", c.budget.step_tol, "search budget: refinement step tolerance");
  cmd->add_option("--max-iters", c.budget.max_iters, "search budget: refinement iterations");
  cmd->add_option("--eq-tol", c.tol.eq_tol, "equality-flag tolerance");
  cmd->add_option("--slack-tol", c.tol.slack_tol, "negative-slack failure tolerance");
  cmd->add_option("--form-tol", c.tol.form_tol, "equality-form detector tolerance");
}

std::vector<fs::path> collect_instance_files(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    fs::path p(in);
    if (fs::is_directory(p)) {
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.path().extension() == ".json" && e.path().filename() != "manifest.json")
          files.push_back(e.path());
      }
    } else if (fs::exists(p)) {
      files.push_back(p);
    } else {
      throw Error(Errc::IoError, "no such input: " + in);
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

bool enabled(const std::vector<std::string>& filter, const std::string& name) {
  if (filter.empty()) return true;
  for (const auto& f : filter)
    if (name.rfind(f, 0) == 0) return true;
  return false;
}

void keep_min_slack(std::optional<InequalityReport>& best, const InequalityReport& r) {
  if (!best || r.slack < best->slack) best = r;
}

Subspace random_plane(Rng& g, int n) {
  Mat b(n, 2);
  b.col(0) = g.gaussian_vector(n);
  b.col(1) = g.gaussian_vector(n);
  return Subspace(orthonormalize_columns(b));
}

std::vector<InequalityReport> run_checks(const SubmanifoldPoint& s, const CheckFlags& cf,
                                         int index) {
  std::vector<InequalityReport> out;
  const int n = s.n();
  Rng base = Rng(cf.seed).derive(0xc0ffee).derive(static_cast<std::uint64_t>(index));

  if (enabled(cf.checks, "scalar-identity")) out.push_back(check_scalar_identity(s, cf.tol));
  if (n < 3) return out;

  std::vector<Subspace> planes;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat b = Mat::Zero(n, 2);
      b(i, 0) = 1.0;
      b(j, 1) = 1.0;
      planes.emplace_back(b);
    }
  {
    Rng g = base.derive(1);
    for (int r = 0; r < cf.planes; ++r) planes.push_back(random_plane(g, n));
  }
  std::vector<Vec> vectors;
  for (int i = 0; i < n; ++i) {
    Vec v = Vec::Zero(n);
    v(i) = 1.0;
    vectors.push_back(v);
  }
  {
    Rng g = base.derive(2);
    for (int r = 0; r < cf.vectors; ++r) vectors.push_back(g.unit_vector(n));
  }

  if (enabled(cf.checks, "fundamental-plane")) {
    std::optional<InequalityReport> best;
    for (const Subspace& pi : planes) keep_min_slack(best, check_chen_fundamental(s, pi, cf.tol));
    out.push_back(*best);
  }
  if (enabled(cf.checks, "ricci-bound")) {
    std::optional<InequalityReport> best;
    for (const Vec& u : vectors) keep_min_slack(best, check_ricci_bound(s, u, cf.tol));
    out.push_back(*best);
  }
  if (enabled(cf.checks, "mean-scalar")) out.push_back(check_mean_vs_scalar(s, cf.tol));
  if (enabled(cf.checks, "theta-bound")) {
    std::optional<InequalityReport> best;
    for (int k = 2; k <= n; ++k) {
      SearchBudget b = cf.budget;
      b.seed = base.derive(3).derive(static_cast<std::uint64_t>(k)).next_u64();
      keep_min_slack(best, check_theta_bound(s, k, b, cf.tol));
    }
    out.push_back(*best);
  }

  if (sasakian_mode(s)) {
    if (enabled(cf.checks, "sasakian")) {
      std::map<std::string, InequalityReport> best;
      for (std::size_t i = 0; i < planes.size(); ++i) {
        const Vec& u = vectors[i % vectors.size()];
        for (const InequalityReport& r : check_sasakian_suite(s, planes[i], u, cf.tol)) {
          auto it = best.find(r.name);
          if (it == best.end() || r.slack < it->second.slack) best[r.name] = r;
        }
      }
      for (auto& [name, r] : best) out.push_back(r);
    }
    if (enabled(cf.checks, "delta-tuple")) {
      std::optional<InequalityReport> best;
      Rng g = base.derive(4);
      for (const TupleSpec& t : enumerate_tuples(n)) {
        if (t.k() == 0) continue;
        std::vector<Mat> frames;
        frames.push_back(Mat::Identity(n, n));
        for (int r = 0; r < cf.tuples; ++r) frames.push_back(random_orthogonal(n, g));
        for (const Mat& q : frames) {
          std::vector<Subspace> l;
          int off = 0;
          for (int dj : t.dims) {
            l.emplace_back(q.middleCols(off, dj));
            off += dj;
          }
          keep_min_slack(best, check_delta_tuple(s, t, l, cf.tol));
        }
      }
      if (best) out.push_back(*best);
    }
  }
  return out;
}

std::string report_csv(const Json& report) {
  std::ostringstream csv;
  csv << "instance,check,lhs,rhs,slack,equality,mode\n";
  for (const auto& inst : report.at("instances")) {
    for (const auto& c : inst.at("checks")) {
      csv << inst.at("instance").get<std::string>() << ',' << c.at("name").get<std::string>()
          << ',' << c.at("lhs").dump() << ',' << c.at("rhs").dump() << ',' << c.at("slack").dump()
          << ',' << (c.at("equality").get<bool>() ? "true" : "false") << ','
          << c.at("mode").get<std::string>() << '\n';
    }
  }
  return csv.str();
}

int cmd_check(const CheckFlags& cf) {
  std::vector<fs::path> files = collect_instance_files(cf.inputs);
  struct Slot {
    std::string name;
    std::vector<InequalityReport> reports;
    std::string error;
  };
  std::vector<Slot> slots(files.size());
  std::atomic<std::size_t> next{0};
  const int workers = std::max(1, cf.workers);
  auto work = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= files.size()) return;
      slots[i].name = files[i].filename().string();
      try {
        Json j = Json::parse(read_file(files[i]));
        SubmanifoldPoint s = instance_from_json(j);
        auto violations = validate_ambient(s.ambient());
        if (!violations.empty())
          throw Error(Errc::ValidationFailed, violations[0].identity);
        slots[i].reports = run_checks(s, cf, static_cast<int>(i));
      } catch (const Json::exception& e) {
        slots[i].error = e.what();
      } catch (const Error& e) {
        slots[i].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  Json report;
  report["schema_version"] = 1;
  Json instances = Json::array();
  bool any_validation_error = false;
  bool any_violation = false;
  for (const Slot& sl : slots) {
    Json inst;
    inst["instance"] = sl.name;
    if (!sl.error.empty()) {
      any_validation_error = true;
      inst["error"] = sl.error;
      inst["checks"] = Json::array();
    } else {
      Json checks = Json::array();
      for (const InequalityReport& r : sl.reports) {
        checks.push_back(report_to_json(r));
        if (!r.passed()) any_violation = true;
      }
      inst["checks"] = checks;
    }
    instances.push_back(inst);
  }
  report["instances"] = instances;

  if (!cf.out_json.empty()) write_file(cf.out_json, dump_canonical(report));
  if (!cf.out_csv.empty()) write_file(cf.out_csv, report_csv(report));
  if (cf.out_json.empty() && cf.out_csv.empty()) std::cout << dump_canonical(report);

  for (const Slot& sl : slots)
    if (!sl.error.empty()) std::cerr << sl.name << ": " << sl.error << "\n";
  if (any_validation_error) return kExitValidation;
  return any_violation ? kExitViolation : kExitOk;
}

struct SweepFlags {
  GenFlags gen;
  std::string param;
  std::vector<double> values;
  std::string out_csv;
  CheckFlags check;
};

int cmd_sweep(const SweepFlags& sf) {
  std::ostringstream csv;
  csv << "param,value,check,min_slack\n";
  for (std::size_t vi = 0; vi < sf.values.size(); ++vi) {
    double value = sf.values[vi];
    GenFlags g = sf.gen;
    if (sf.param == "sigma_scale") g.sigma_scale = value;
    else if (sf.param == "n") g.n = static_cast<int>(value);
    else if (sf.param == "c") g.kappa_mu = {value, g.kappa_mu.size() == 3 ? g.kappa_mu[1] : 1.0,
                                            g.kappa_mu.size() == 3 ? g.kappa_mu[2] : 0.0};
    else if (sf.param == "kappa") {
      if (!g.non_sasakian.empty()) g.non_sasakian[0] = value;
      else g.kappa_mu = {g.kappa_mu.size() == 3 ? g.kappa_mu[0] : 1.0, value,
                         g.kappa_mu.size() == 3 ? g.kappa_mu[2] : 0.0};
    } else if (sf.param == "mu") {
      if (!g.non_sasakian.empty()) g.non_sasakian[1] = value;
      else g.kappa_mu = {g.kappa_mu.size() == 3 ? g.kappa_mu[0] : 1.0,
                         g.kappa_mu.size() == 3 ? g.kappa_mu[1] : 1.0, value};
    } else if (sf.param != "lambda") {
      throw Error(Errc::BadSpec, "unknown sweep parameter: " + sf.param);
    }

    std::map<std::string, double> min_slack;
    for (int i = 0; i < g.count; ++i) {
      SubmanifoldPoint s = [&]() {
        if (sf.param == "lambda") {
          GeneratorSpec spec = spec_from_flags(g);
          return make_totally_umbilical(make_ambient(spec), spec.n, value);
        }
        return build_instance(spec_from_flags(g), g, i);
      }();
      for (const InequalityReport& r :
           run_checks(s, sf.check, static_cast<int>(vi * 1000 + i))) {
        auto it = min_slack.find(r.name);
        if (it == min_slack.end() || r.slack < it->second) min_slack[r.name] = r.slack;
      }
    }
    for (const auto& [name, slack] : min_slack)
      csv << sf.param << ',' << num(value) << ',' << name << ',' << num(slack) << '\n';
  }
  write_file(sf.out_csv, csv.str());
  return kExitOk;
}

int cmd_oracle(const std::vector<std::string>& inputs, int density, const std::string& out,
               std::uint64_t seed) {
  std::vector<fs::path> files = collect_instance_files(inputs);
  Json report;
  report["schema_version"] = 1;
  Json instances = Json::array();
  for (const fs::path& p : files) {
    SubmanifoldPoint s = instance_from_json(Json::parse(read_file(p)));
    OracleInvariants oi = oracle_invariants(s, density, seed);
    Json o;
    o["tau"] = oi.tau;
    o["inf_k"] = oi.inf_k;
    Json deltas = Json::array();
    for (const auto& [t, v] : oi.delta)
      deltas.push_back(Json{{"tuple", t.str()}, {"value", v}});
    o["delta"] = deltas;
    Json tdeltas = Json::array();
    for (const auto& [t, v] : oi.tilde_delta)
      tdeltas.push_back(Json{{"tuple", t.str()}, {"value", v}});
    o["tilde_delta"] = tdeltas;
    Json thetas = Json::array();
    for (const auto& [k, v] : oi.theta) thetas.push_back(Json{{"k", k}, {"value", v}});
    o["theta"] = thetas;
    Json inst;
    inst["instance"] = p.filename().string();
    inst["tau_engine"] = scalar_curvature(s);
    inst["oracle"] = o;
    instances.push_back(inst);
  }
  report["instances"] = instances;
  if (out.empty()) std::cout << dump_canonical(report);
  else write_file(out, dump_canonical(report));
  return kExitOk;
}

int cmd_report(const std::string& in, const std::string& out) {
  Json report = Json::parse(read_file(in));
  std::string csv = report_csv(report);
  if (out.empty()) std::cout << csv;
  else write_file(out, csv);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvature inequality workbench"};
  app.require_subcommand(1);

  GenFlags gen_flags;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "generate instance files");
  add_gen_flags(gen, gen_flags);
  gen->add_option("--out", gen_out, "output directory")->required();

  CheckFlags check_flags;
  CLI::App* check = app.add_subcommand("check", "run the inequality suite");
  check->add_option("--in", check_flags.inputs, "instance files or directories")->required();
  check->add_option("--out", check_flags.out_json, "report JSON path");
  check->add_option("--csv", check_flags.out_csv, "summary CSV path");
  check->add_option("--checks", check_flags.checks, "check-name prefixes to run");
  check->add_option("--workers", check_flags.workers, "worker threads");
  check->add_option("--seed", check_flags.seed, "witness-sampling seed");
  add_check_sampling_flags(check, check_flags);

  SweepFlags sweep_flags;
  CLI::App* sweep = app.add_subcommand("sweep", "slack vs a swept parameter");
  add_gen_flags(sweep, sweep_flags.gen);
  sweep->add_option("--param", sweep_flags.param, "sigma_scale|lambda|c|kappa|mu|n")->required();
  sweep->add_option("--values", sweep_flags.values, "parameter values")->required();
  sweep->add_option("--out", sweep_flags.out_csv, "CSV output path")->required();
  add_check_sampling_flags(sweep, sweep_flags.check);

  std::vector<std::string> oracle_in;
  int oracle_density = 100000;
  std::string oracle_out;
  std::uint64_t oracle_seed = env_seed_default();
  CLI::App* oracle = app.add_subcommand("oracle", "brute-force invariant recomputation");
  oracle->add_option("--in", oracle_in, "instance files or directories")->required();
  oracle->add_option("--density", oracle_density, "plane sample count");
  oracle->add_option("--out", oracle_out, "report JSON path");
  oracle->add_option("--seed", oracle_seed, "oracle sampling seed");

  std::string report_in, report_out;
  CLI::App* report = app.add_subcommand("report", "convert a check report to CSV");
  report->add_option("--in", report_in, "report JSON path")->required();
  report->add_option("--out", report_out, "CSV output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_flags, gen_out);
    if (check->parsed()) return cmd_check(check_flags);
    if (sweep->parsed()) {
      sweep_flags.check.seed = sweep_flags.gen.seed;
      return cmd_sweep(sweep_flags);
    }
    if (oracle->parsed()) return cmd_oracle(oracle_in, oracle_density, oracle_out, oracle_seed);
    if (report->parsed()) return cmd_report(report_in, report_out);
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::IoError ? kExitIo : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
