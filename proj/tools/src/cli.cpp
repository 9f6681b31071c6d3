#include "lowrank/cli.hpp"

#include "lowrank/almost.hpp"
#include "lowrank/errors.hpp"
#include "lowrank/interlace.hpp"
#include "lowrank/io.hpp"
#include "lowrank/matrix.hpp"
#include "lowrank/multiset.hpp"
#include "lowrank/normalcheck.hpp"
#include "lowrank/random.hpp"
#include "lowrank/weyr.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

namespace lowrank::cli {
namespace {

std::string num(double x) { return format_double(x); }
std::string num(Complex z) { return format_double(z.real()) + " " + format_double(z.imag()); }

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string table_str(const detail::PartitionTable& t) {
  std::string s;
  for (std::size_t i = 0; i < t.rows().size(); ++i) {
    if (i) s += "; ";
    s += num(t.rows()[i].lambda) + ":" + join_ints(t.rows()[i].parts);
  }
  return s;
}

std::string multiset_str(const ComplexMultiset& m) {
  std::string s;
  for (std::size_t i = 0; i < m.entries().size(); ++i) {
    if (i) s += "; ";
    s += num(m.entries()[i].value) + " x" + std::to_string(m.entries()[i].count);
  }
  return s;
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ordered report. Text mode aligns keys and prints matrices as blocks in the
// shared file format; key-value mode flattens everything to key=value.
class Report {
 public:
  void put(const std::string& key, std::string value) { entries_.push_back({key, std::move(value), {}}); }
  void put(const std::string& key, const char* value) { put(key, std::string(value)); }
  void put(const std::string& key, double value) { put(key, num(value)); }
  void put(const std::string& key, Complex value) { put(key, num(value)); }
  void put(const std::string& key, bool value) { put(key, std::string(value ? "true" : "false")); }
  void put(const std::string& key, int value) { put(key, std::to_string(value)); }
  void put(const std::string& key, long value) { put(key, std::to_string(value)); }
  void put(const std::string& key, std::uint64_t value) { put(key, std::to_string(value)); }

  void matrix(const std::string& key, const ComplexMatrix& m) {
    std::ostringstream block;
    write_matrix(block, m);
    std::string data;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) data += (data.empty() ? "" : " ") + num(m(r, c));
    }
    entries_.push_back({key, block.str(),
                        {{key + ".rows", std::to_string(m.rows())},
                         {key + ".cols", std::to_string(m.cols())},
                         {key + ".data", data}}});
  }

  // Shown in text mode only.
  void text_block(const std::string& key, std::string text) {
    entries_.push_back({key, std::move(text), {}, true});
  }

  void write(std::ostream& out, Format f) const {
    std::size_t width = 0;
    for (const auto& e : entries_) width = std::max(width, e.key.size());
    for (const auto& e : entries_) {
      const bool block = e.text_only || !e.flat.empty();
      if (f == Format::KeyValue) {
        if (e.text_only) continue;
        if (e.flat.empty()) {
          out << e.key << '=' << e.value << '\n';
        } else {
          for (const auto& [k, v] : e.flat) out << k << '=' << v << '\n';
        }
      } else if (block) {
        out << e.key << ":\n";
        std::istringstream lines(e.value);
        for (std::string line; std::getline(lines, line);) out << "  " << line << '\n';
      } else {
        out << e.key << std::string(width + 2 - e.key.size(), ' ') << e.value << '\n';
      }
    }
  }

 private:
  struct Entry {
    std::string key;
    std::string value;
    std::vector<std::pair<std::string, std::string>> flat;
    bool text_only = false;
  };
  std::vector<Entry> entries_;
};

void need_inputs(const RunConfig& c, std::size_t lo, std::size_t hi) {
  if (c.inputs.size() < lo || c.inputs.size() > hi) {
    std::ostringstream msg;
    msg << c.verb << " takes ";
    if (lo == hi) {
      msg << lo;
    } else {
      msg << lo << " to " << hi;
    }
    msg << " input file(s), got " << c.inputs.size();
    throw UsageError(msg.str());
  }
}

std::optional<Curve> curve_of(const RunConfig& c) {
  if (c.circle && c.line) throw UsageError("--circle and --line are mutually exclusive");
  if (c.circle) return Curve::circle(Complex(c.circle->cx, c.circle->cy), c.circle->r);
  if (c.line) return Curve::line(Complex(c.line->px, c.line->py), Complex(c.line->dx, c.line->dy));
  return std::nullopt;
}

void put_curve(Report& r, const Curve& c) {
  if (c.kind() == Curve::Kind::Circle) {
    r.put("curve", "circle " + num(c.center()) + " " + num(c.radius()));
  } else {
    r.put("curve", "line " + num(c.point()) + " " + num(c.direction()));
  }
}

void write_out(const RunConfig& c, const std::function<void(std::ostream&)>& emit) {
  if (c.out.empty()) return;
  std::ofstream f(c.out);
  if (!f) fail(Errc::InvalidArgument, "cannot open " + c.out + " for writing");
  emit(f);
  if (!f) fail(Errc::InvalidArgument, "failed writing " + c.out);
}

void verb_rank_distance(const RunConfig& c, Report& r) {
  need_inputs(c, 2, 2);
  const ComplexMatrix a = load_matrix(c.inputs[0]);
  const ComplexMatrix b = load_matrix(c.inputs[1]);
  require_same_shape(a, b, "rank-distance");
  const int rank = arithmetic_distance(a, b, c.tol);
  const RealVector s = singular_values(a - b);
  const double ref = std::max({s.size() ? s(0) : 0.0, spectral_norm(a), spectral_norm(b)});
  r.put("n", static_cast<int>(a.rows()));
  r.put("rank", rank);
  if (a.rows() == a.cols()) r.put("normalized", normalized_distance(a, b, c.tol).str());
  r.put("threshold", c.tol * ref);
  r.put("sigma_max", s.size() ? s(0) : 0.0);
  r.put("sigma_rank", rank > 0 ? s(rank - 1) : 0.0);
  r.put("sigma_next", rank < s.size() ? s(rank) : 0.0);
}

void verb_chain(const RunConfig& c, Report& r) {
  need_inputs(c, 2, 2);
  const ComplexMatrix a = load_matrix(c.inputs[0]);
  const ComplexMatrix b = load_matrix(c.inputs[1]);
  require_same_shape(a, b, "chain");
  const bool unitary = is_unitary(a, c.tol) && is_unitary(b, c.tol);
  const auto chain = unitary ? unitary_chain(a, b, c.tol) : rank1_chain(a, b, c.tol);
  r.put("kind", unitary ? "unitary" : "rank1");
  r.put("distance", arithmetic_distance(a, b, c.tol));
  r.put("length", static_cast<int>(chain.size()) - 1);
  double unit_res = 0.0;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    r.put("step." + std::to_string(i + 1) + ".rank", arithmetic_distance(chain[i], chain[i + 1], c.tol));
  }
  if (unitary) {
    const auto n = a.rows();
    for (const auto& m : chain) unit_res = std::max(unit_res, max_abs(m.adjoint() * m - ComplexMatrix::Identity(n, n)));
    r.put("unitarity_residual", unit_res);
  }
  r.put("end_error", max_abs(chain.back() - b));
  write_out(c, [&](std::ostream& f) {
    for (std::size_t i = 0; i < chain.size(); ++i) {
      f << "# step " << i << '\n';
      write_matrix(f, chain[i]);
    }
  });
}

void put_weyr(Report& r, const std::string& prefix, const WeyrChar& w) {
  const SegreChar s = weyr_to_segre(w);
  r.put(prefix + "size", w.size());
  r.put(prefix + "eigenvalues", static_cast<int>(w.rows().size()));
  for (std::size_t i = 0; i < w.rows().size(); ++i) {
    const std::string k = prefix + "row." + std::to_string(i + 1);
    r.put(k + ".lambda", w.rows()[i].lambda);
    r.put(k + ".weyr", join_ints(w.rows()[i].parts));
    r.put(k + ".segre", join_ints(s.rows()[i].parts));
  }
}

void verb_weyr(const RunConfig& c, Report& r) {
  need_inputs(c, 1, 1);
  const ComplexMatrix a = load_matrix(c.inputs[0]);
  WeyrOptions opts;
  opts.rank_tol = c.tol;
  opts.merge_rel_tol = c.merge_tol;
  const WeyrChar w = weyr_from_matrix(a, opts);
  put_weyr(r, "", w);
  r.put("cluster_tol", w.key_tol());
  r.text_block("ferrers", ferrers_diagram(w));
  write_out(c, [&](std::ostream& f) { write_weyr(f, w); });
}

void verb_weyr_dist(const RunConfig& c, Report& r) {
  need_inputs(c, 2, 2);
  const WeyrChar a = load_weyr(c.inputs[0]);
  const WeyrChar b = load_weyr(c.inputs[1]);
  r.put("a", table_str(a));
  r.put("b", table_str(b));
  r.put("distance", weyr_distance(a, b));
  const auto chain = weyr_geodesic_chain(a, b);
  r.put("length", static_cast<int>(chain.size()) - 1);
  for (std::size_t i = 0; i < chain.size(); ++i) r.put("chain." + std::to_string(i), table_str(chain[i]));
  write_out(c, [&](std::ostream& f) {
    for (std::size_t i = 0; i < chain.size(); ++i) {
      f << "# step " << i << '\n';
      write_weyr(f, chain[i]);
    }
  });
}

void verb_thompson(const RunConfig& c, Report& r) {
  need_inputs(c, 2, 2);
  const WeyrChar a = load_weyr(c.inputs[0]);
  const WeyrChar b = load_weyr(c.inputs[1]);
  const int k = c.k.value_or(1);
  r.put("k", k);
  r.put("a", table_str(a));
  r.put("b", table_str(b));
  r.put("distance", weyr_distance(a, b));
  r.put("reachable", thompson_reachable(a, b, k));
}

void put_assign(Report& r, const ComplexMatrix& a, const AssignResult& res) {
  r.put("n", static_cast<int>(a.rows()));
  r.put("dc", res.cert.dc);
  r.put("rank", res.cert.rank);
  r.put("steps", res.cert.steps);
  r.put("unitarity_residual", res.cert.unitarity_residual);
  r.put("spectrum_error", res.cert.spectrum_error);
  r.put("rank_gap", res.cert.rank_gap);
}

AssignOptions assign_opts(const RunConfig& c) {
  AssignOptions o;
  o.tol = c.tol;
  o.merge_rel_tol = c.merge_tol;
  return o;
}

void verb_assign(const RunConfig& c, Report& r) {
  need_inputs(c, 2, 2);
  const ComplexMatrix a = load_matrix(c.inputs[0]);
  const ComplexMultiset target = load_multiset(c.inputs[1], c.merge_tol);
  AssignResult res;
  if (c.verb == "assign-hermitian") {
    res = hermitian_assign_spectrum(a, target, assign_opts(c));
  } else if (c.verb == "assign-unitary") {
    res = unitary_assign_spectrum(a, target, assign_opts(c));
  } else {
    const auto curve = curve_of(c);
    if (!curve) throw UsageError("assign-normal-curve needs --circle or --line");
    put_curve(r, *curve);
    res = normal_on_curve_assign_spectrum(a, target, *curve, assign_opts(c));
  }
  put_assign(r, a, res);
  const auto n = a.rows();
  const ComplexMatrix& b = res.matrix;
  if (c.verb == "assign-hermitian") r.put("hermitian_residual", max_abs(b - b.adjoint()));
  if (c.verb == "assign-unitary") r.put("unitary_residual", max_abs(b.adjoint() * b - ComplexMatrix::Identity(n, n)));
  if (c.verb == "assign-normal-curve") r.put("normal_residual", max_abs(b * b.adjoint() - b.adjoint() * b));
  r.matrix("b", b);
  write_out(c, [&](std::ostream& f) { write_matrix(f, b); });
}

void verb_dc(const RunConfig& c, Report& r) {
  need_inputs(c, 2, 2);
  const ComplexMultiset a = load_multiset(c.inputs[0], c.merge_tol);
  const ComplexMultiset b = load_multiset(c.inputs[1], c.merge_tol);
  r.put("a", multiset_str(a));
  r.put("b", multiset_str(b));
  r.put("dc", dc_distance(a, b));
  r.put("tilde_dc", tilde_dc_distance(a, b));
  if (const auto curve = curve_of(c)) {
    put_curve(r, *curve);
    r.put("interval_dc", interval_dc(a, b, *curve));
    // Interlacing is only defined for equal-size, simple, disjoint sets.
    try {
      r.put("interlacing", interlacing_check(a, b, *curve));
    } catch (const Error& e) {
      if (e.code() != Errc::PreconditionViolated) throw;
      r.put("interlacing", "n/a");
    }
  }
}

void verb_geodesic_multiset(const RunConfig& c, Report& r) {
  need_inputs(c, 2, 2);
  const ComplexMultiset a = load_multiset(c.inputs[0], c.merge_tol);
  const ComplexMultiset b = load_multiset(c.inputs[1], c.merge_tol);
  const Curve curve = curve_of(c).value_or(Curve::real_line());
  put_curve(r, curve);
  r.put("distance", interval_dc(a, b, curve));
  const auto chain = geodesic_chain_on_curve(a, b, curve);
  r.put("length", static_cast<int>(chain.size()) - 1);
  for (std::size_t i = 0; i < chain.size(); ++i) r.put("chain." + std::to_string(i), multiset_str(chain[i]));
  write_out(c, [&](std::ostream& f) {
    for (std::size_t i = 0; i < chain.size(); ++i) {
      f << "# step " << i << '\n';
      write_multiset(f, chain[i]);
    }
  });
}

void verb_nearest_hermitian(const RunConfig& c, Report& r) {
  need_inputs(c, 1, 1);
  const ComplexMatrix a = load_matrix(c.inputs[0]);
  require_square(a, "nearest-hermitian");
  const ComplexMatrix s = nearest_selfadjoint(a);
  r.put("n", static_cast<int>(a.rows()));
  r.put("defect", selfadjoint_defect(a, c.tol).str());
  r.put("rank", arithmetic_distance(a, s, c.tol));
  r.put("distance", normalized_distance(a, s, c.tol).str());
  r.matrix("s", s);
  write_out(c, [&](std::ostream& f) { write_matrix(f, s); });
}

void verb_nearest_unitary(const RunConfig& c, Report& r) {
  need_inputs(c, 1, 1);
  const ComplexMatrix a = load_matrix(c.inputs[0]);
  const NearestUnitary res = nearest_unitary_rank(a, c.tol);
  r.put("n", static_cast<int>(a.rows()));
  r.put("defect", unitary_defect(a, c.tol).str());
  r.put("defect_rank", res.defect_rank);
  r.put("isometric_dim", res.isometric_dim);
  r.put("rank", res.rank);
  r.put("isometry_residual", res.isometry_residual);
  r.put("unitarity_residual", res.unitarity_residual);
  r.matrix("u", res.u);
  write_out(c, [&](std::ostream& f) { write_matrix(f, res.u); });
}

void verb_almost_commuting(const RunConfig& c, Report& r) {
  need_inputs(c, 0, 1);
  std::vector<Complex> lambdas;
  if (c.inputs.empty()) {
    const int n = c.n.value_or(8);
    if (n < 0) throw UsageError("--n must be nonnegative");
    Rng rng(c.seed);
    for (int i = 0; i < n; ++i) lambdas.push_back(random_complex(rng));
    r.put("source", "random");
  } else {
    const ComplexMultiset m = load_multiset(c.inputs[0], c.merge_tol);
    for (const auto& e : m.entries()) {
      if (e.count != 1) fail(Errc::DuplicateEigenvalue, "almost-commuting: eigenvalue " + num(e.value) + " repeats");
      lambdas.push_back(e.value);
    }
    r.put("source", c.inputs[0]);
  }
  const CommutingWitness w = checkerboard_witness(lambdas, c.tol);
  const int n = static_cast<int>(lambdas.size());
  r.put("n", n);
  for (int i = 0; i < n; ++i) r.put("lambda." + std::to_string(i + 1), lambdas[static_cast<std::size_t>(i)]);
  r.put("commutator_rank", w.commutator_rank);
  r.put("commutator_distance", w.commutator_distance.str());
  r.put("checkerboard_residual", w.checkerboard_residual);
  r.put("certificate.rows", join_ints(w.certificate.rows));
  r.put("certificate.cols", join_ints(w.certificate.cols));
  const CauchyDeterminant& d = w.certificate.determinant;
  r.put("certificate.det_log_abs", d.log_abs);
  r.put("certificate.det_arg", d.arg);
  r.put("certificate.elim_log_abs", d.elim_log_abs);
  r.put("certificate.elim_arg", d.elim_arg);
  r.put("certificate.relative_disagreement", d.relative_disagreement);
  r.put("certificate.nonsingular", d.nonsingular);
  r.put("certificate.lower_bound", w.certificate.lower_bound);
  r.put("commuting_distance_bound", Fraction(w.certificate.lower_bound, n).str());
  write_out(c, [&](std::ostream& f) { write_matrix(f, w.x); });
}

int verb_verify_normal_bound(const RunConfig& c, Report& r) {
  need_inputs(c, 0, 0);
  Th4HarnessOptions o;
  o.trials = c.trials;
  o.n_max = c.n.value_or(32);
  o.k_max = c.k.value_or(4);
  o.seed = c.seed;
  o.tol = c.tol;
  const Th4HarnessReport rep = th4_harness(o);
  r.put("trials", rep.trials);
  r.put("n_max", o.n_max);
  r.put("k_max", o.k_max);
  r.put("dim_violations", rep.dim_violations);
  r.put("dc_violations", rep.dc_violations);
  r.put("worst_slack", rep.worst_slack);
  r.put("max_rank", rep.max_rank);
  r.put("total_queries", rep.total_queries);
  const bool ok = rep.dim_violations == 0 && rep.dc_violations == 0;
  r.put("result", ok ? "pass" : "fail");
  return ok ? kExitOk : kExitNumerical;
}

using VerbFn = std::function<int(const RunConfig&, Report&)>;

VerbFn plain(void (*f)(const RunConfig&, Report&)) {
  return [f](const RunConfig& c, Report& r) {
    f(c, r);
    return kExitOk;
  };
}

const std::map<std::string, VerbFn>& dispatch() {
  static const std::map<std::string, VerbFn> table{
      {"rank-distance", plain(verb_rank_distance)},
      {"chain", plain(verb_chain)},
      {"weyr", plain(verb_weyr)},
      {"weyr-dist", plain(verb_weyr_dist)},
      {"thompson-check", plain(verb_thompson)},
      {"assign-hermitian", plain(verb_assign)},
      {"assign-unitary", plain(verb_assign)},
      {"assign-normal-curve", plain(verb_assign)},
      {"dc", plain(verb_dc)},
      {"geodesic-multiset", plain(verb_geodesic_multiset)},
      {"nearest-hermitian", plain(verb_nearest_hermitian)},
      {"nearest-unitary", plain(verb_nearest_unitary)},
      {"almost-commuting", plain(verb_almost_commuting)},
      {"verify-normal-bound", verb_verify_normal_bound},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& verbs() {
  static const std::vector<std::string> v{
      "rank-distance",    "chain",          "weyr",
      "weyr-dist",        "thompson-check", "assign-hermitian",
      "assign-unitary",   "assign-normal-curve", "dc",
      "geodesic-multiset", "nearest-hermitian", "nearest-unitary",
      "almost-commuting", "verify-normal-bound",
  };
  return v;
}

ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Low-rank perturbation toolkit: arithmetic distance, spectral assignment and certificates.",
               "lowrank"};
  app.add_option("verb", cfg.verb, "Subcommand")->required()->check(CLI::IsMember(verbs()));
  app.add_option("inputs", cfg.inputs, "Input files (matrix, multiset or weyr table, per verb)");
  app.add_option("--tol", cfg.tol, "Relative rank tolerance")->check(CLI::PositiveNumber);
  app.add_option("--merge-tol", cfg.merge_tol, "Eigenvalue identification tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Random seed");
  std::string format = "text";
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "kv"}));
  app.add_option("--out", cfg.out, "Write the constructed object to this file");
  std::vector<double> circle, line;
  app.add_option("--circle", circle, "Curve: circle cx cy r")->expected(3);
  app.add_option("--line", line, "Curve: line px py dx dy")->expected(4);
  int k = 0, n = 0;
  auto* k_opt = app.add_option("--k", k, "Rank budget (thompson-check) or max perturbation rank");
  auto* n_opt = app.add_option("--n", n, "Matrix size (almost-commuting) or max size (verify-normal-bound)");
  app.add_option("--trials", cfg.trials, "Trials for verify-normal-bound")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {std::nullopt, code == 0 ? kExitOk : kExitUsage};
  }
  cfg.format = format == "kv" ? Format::KeyValue : Format::Text;
  if (!circle.empty()) cfg.circle = CircleArg{circle[0], circle[1], circle[2]};
  if (!line.empty()) cfg.line = LineArg{line[0], line[1], line[2], line[3]};
  if (k_opt->count()) cfg.k = k;
  if (n_opt->count()) cfg.n = n;
  return {cfg, kExitOk};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto it = dispatch().find(config.verb);
  if (it == dispatch().end()) {
    err << "lowrank: unknown verb '" << config.verb << "'\n";
    return kExitUsage;
  }
  Report r;
  r.put("verb", config.verb);
  r.put("seed", config.seed);
  r.put("tol", config.tol);
  r.put("merge_tol", config.merge_tol);
  try {
    const int status = it->second(config, r);
    r.write(out, config.format);
    return status;
  } catch (const UsageError& e) {
    err << "lowrank: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "lowrank: " << e.what() << '\n';
    if (e.code() == Errc::ParseError) return kExitParse;
    return is_numerical(e.code()) ? kExitNumerical : kExitPrecondition;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const ParseOutcome p = parse_args(argc, argv, out, err);
  if (!p.config) return p.status;
  return run(*p.config, out, err);
}

}  // namespace lowrank::cli
