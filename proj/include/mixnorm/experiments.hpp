#ifndef MIXNORM_EXPERIMENTS_HPP
#define MIXNORM_EXPERIMENTS_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mixnorm/errors.hpp"
#include "mixnorm/exponents.hpp"
#include "mixnorm/opnorm.hpp"
#include "mixnorm/parallel.hpp"
#include "mixnorm/tensor.hpp"
#include "mixnorm/witness.hpp"

namespace mixnorm {

inline constexpr std::int64_t kDefaultBudget = std::int64_t{1} << 22;

// Fixed 12-significant-digit formatting shared by every report writer, so
// reruns with identical configs produce byte-identical files.
inline std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::string(buf);
}

struct RunOptions {
  std::int64_t budget = kDefaultBudget;
  AscentOptions ascent;
  int jobs = 1;
  double slope_threshold = 0.05;  // log-log slope above which growth is declared
  std::string experiment_id;
};

struct RatioRow {
  std::string experiment_id;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  double mixed_norm = 0.0;
  double opnorm = 0.0;
  bool opnorm_exact = false;
  double ratio = 0.0;
};

// mixed(2,1) ≤ √2·‖A‖ holds for every real matrix by theorem; a numeric
// violation is a library bug, never a property of the input.
inline void enforce_sqrt2_bound(double mixed21, double opnorm, double slack = 1e-9) {
  if (mixed21 > std::sqrt(2.0) * opnorm + slack)
    throw HardAssertionError("theorem bound violated: mixed(2,1) = " + format_g12(mixed21) +
                             " > sqrt(2) * " + format_g12(opnorm) + " + " + format_g12(slack));
}

// The hard bound applies when the computed norm is exactly the bilinear
// sup-exponent case: real field, p = (∞,∞), mixed exponents (2,1).
inline bool sqrt2_guard_applies(const ProblemSpec& spec, const ExponentTuple& exps) {
  if (spec.m != 2 || spec.field != Field::real) return false;
  for (const ExtExp& e : spec.p)
    if (!e.is_inf()) return false;
  return exps.size() == 2 && exps[0] == ExtExp::of(2) && exps[1] == ExtExp::of(1);
}

inline double safe_ratio(double mixed, double opnorm) {
  if (opnorm > 0.0) return mixed / opnorm;
  return mixed > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

struct LabeledTensor {
  std::string label;
  std::uint64_t seed = 0;
  TensorVariant tensor;
};

struct VerifyReport {
  std::vector<RatioRow> rows;
  double max_ratio = 0.0;
  AdmissibilityVerdict admissibility;
  ExponentTuple exps;        // exponents actually used: (q_1..q_{m-1}, inner)
  bool sqrt2_guard = false;  // whether the √2 hard bound applied to these rows
};

// Ratio table mixed/opnorm over explicit instances. The innermost mixed
// exponent is forced to conjugate(p_{σ(m)}); q itself may be inadmissible
// (the verdict is reported alongside). Exact opnorm methods are preferred;
// ascent values are lower bounds, making their ratios upper estimates.
inline VerifyReport verify_inequality(const ProblemSpec& spec, const ExponentTuple& q,
                                      const std::vector<LabeledTensor>& instances,
                                      const RunOptions& opt = {}) {
  VerifyReport rep;
  rep.admissibility = orl_admissible(spec, q);
  rep.exps = q;
  rep.exps.push_back(rep.admissibility.thresholds.inner);
  rep.sqrt2_guard = sqrt2_guard_applies(spec, rep.exps);

  MixedNormSpec mspec = make_mixed_spec(spec.sigma, rep.exps);
  rep.rows.resize(instances.size());
  parallel_for(static_cast<std::int64_t>(instances.size()), opt.jobs, [&](std::int64_t i) {
    const LabeledTensor& inst = instances[static_cast<std::size_t>(i)];
    RatioRow row;
    row.experiment_id = inst.label.empty() ? opt.experiment_id : inst.label;
    row.seed = inst.seed;
    std::visit(
        [&](const auto& T) {
          using TT = std::decay_t<decltype(T)>;
          if constexpr (std::same_as<TT, ComplexTensor>) {
            if (spec.field == Field::real)
              throw DomainError("verify: spec declares the real field but instance '" +
                                inst.label + "' is complex");
          }
          if (T.rank() != spec.m)
            throw ShapeError("verify: instance '" + inst.label + "' has rank " +
                             std::to_string(T.rank()) + ", spec arity is " +
                             std::to_string(spec.m));
          row.n = T.dim(0);
          row.mixed_norm = mixed_norm(T, mspec);
          const auto est = opnorm_best(T, spec.p, opt.budget, opt.ascent);
          row.opnorm = est.value;
          row.opnorm_exact = est.exact;
          row.ratio = safe_ratio(row.mixed_norm, row.opnorm);
          if (rep.sqrt2_guard && est.exact) enforce_sqrt2_bound(row.mixed_norm, est.value);
        },
        inst.tensor);
    rep.rows[static_cast<std::size_t>(i)] = std::move(row);
  });
  for (const RatioRow& r : rep.rows) rep.max_ratio = std::max(rep.max_ratio, r.ratio);
  return rep;
}

inline double median_of(std::vector<double> v) {
  if (v.empty()) throw DomainError("median of empty set");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw DomainError("line fit needs at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("line fit: degenerate abscissa");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (syy == 0.0) {
    f.r2 = 1.0;
  } else {
    double ssres = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = y[i] - (f.intercept + f.slope * x[i]);
      ssres += e * e;
    }
    f.r2 = 1.0 - ssres / syy;
  }
  return f;
}

struct GrowthReport {
  std::string experiment_id;
  std::vector<RatioRow> rows;  // sorted by n, then seed
  std::vector<std::pair<std::int64_t, double>> medians;  // per-n median ratio
  double slope = 0.0;
  double r2 = 1.0;
  std::string verdict;  // "growing" | "bounded"
  bool truncated = false;
  std::string warning;
};

// Growth of the ratio mixed/opnorm along a witness family: one row per
// (n, seed), per-n medians, and a least-squares fit of log median ratio
// against log n. Growth is declared above the slope threshold. A budget
// overflow at some n truncates the range (with a warning) instead of
// failing, as long as at least two sizes completed.
inline GrowthReport probe_optimality(const ProblemSpec& spec, const ExponentTuple& q,
                                     const FamilyDescriptor& family,
                                     const std::vector<std::int64_t>& n_range,
                                     const std::vector<std::uint64_t>& seeds,
                                     const RunOptions& opt = {}) {
  spec.validate();
  if (n_range.size() < 4) throw DomainError("probe: need at least 4 sizes in n_range");
  for (std::size_t i = 1; i < n_range.size(); ++i)
    if (n_range[i] <= n_range[i - 1])
      throw DomainError("probe: n_range must be strictly increasing");

  const bool vector_mode = family.codomain_r.has_value();
  if (vector_mode && family.kind != "diagonal")
    throw DomainError("probe: codomain exponent is only defined for the diagonal family");
  const bool seeded = family.kind == "random-sign";
  if (seeded && seeds.empty()) throw DomainError("probe: random-sign family needs seeds");

  GrowthReport rep;
  rep.experiment_id = opt.experiment_id;
  const AdmissibilityVerdict verdict = orl_admissible(spec, q);
  ExponentTuple exps = q;
  exps.push_back(verdict.thresholds.inner);
  const bool guard = sqrt2_guard_applies(spec, exps);

  // Mixed-norm layout: scalar mode aggregates the m input axes in σ-order;
  // vector mode appends the codomain axis innermost with exponent r.
  MixedNormSpec mspec = make_mixed_spec(spec.sigma, exps);
  if (vector_mode) {
    mspec.order.push_back(spec.m + 1);
    mspec.exps.push_back(*family.codomain_r);
  }

  for (std::int64_t n : n_range) {
    const std::vector<std::uint64_t> row_seeds =
        seeded ? seeds : std::vector<std::uint64_t>{family.seed};
    std::vector<RatioRow> batch(row_seeds.size());
    try {
      parallel_for(static_cast<std::int64_t>(row_seeds.size()), opt.jobs, [&](std::int64_t i) {
        RatioRow row;
        row.experiment_id = opt.experiment_id;
        row.n = n;
        row.seed = row_seeds[static_cast<std::size_t>(i)];
        if (vector_mode) {
          const VectorValuedOp<double> V =
              diagonal_vector_witness(spec.m, n, spec.p, *family.codomain_r);
          const LiftedForm<double> L = lift_vector_valued(V);
          row.mixed_norm = mixed_norm(L.coeffs, mspec);
          const auto est = opnorm_best(L.coeffs, L.p, opt.budget, opt.ascent);
          row.opnorm = est.value;
          row.opnorm_exact = est.exact;
        } else {
          const RealTensor T = scalar_instance(family, n, row.seed);
          row.mixed_norm = mixed_norm(T, mspec);
          const auto est = opnorm_best(T, spec.p, opt.budget, opt.ascent);
          row.opnorm = est.value;
          row.opnorm_exact = est.exact;
          if (guard && est.exact) enforce_sqrt2_bound(row.mixed_norm, est.value);
        }
        row.ratio = safe_ratio(row.mixed_norm, row.opnorm);
        batch[static_cast<std::size_t>(i)] = std::move(row);
      });
    } catch (const BudgetError& e) {
      if (rep.medians.size() < 2) throw;
      rep.truncated = true;
      rep.warning = "range truncated at n = " + std::to_string(n) + ": " + e.what();
      break;
    }
    std::vector<double> ratios;
    ratios.reserve(batch.size());
    for (RatioRow& row : batch) {
      ratios.push_back(row.ratio);
      rep.rows.push_back(std::move(row));
    }
    rep.medians.emplace_back(n, median_of(ratios));
  }

  std::vector<double> lx, ly;
  for (const auto& [n, med] : rep.medians) {
    if (med <= 0.0) throw DomainError("probe: ratio vanished at n = " + std::to_string(n));
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(med));
  }
  const LineFit fit = fit_line(lx, ly);
  rep.slope = fit.slope;
  rep.r2 = fit.r2;
  rep.verdict = fit.slope > opt.slope_threshold ? "growing" : "bounded";
  return rep;
}

struct ConstantSearchReport {
  std::int64_t n = 0;
  bool reduced = true;
  std::int64_t classes = 0;
  double best_ratio = 0.0;
  std::int64_t best_class = 0;
  std::optional<RealTensor> best_matrix;
  double wall_seconds = 0.0;
};

// The sign matrix of one enumeration class. With symmetry reduction the
// first row and column are fixed to +1 (every orbit under row/column
// negation contains such a representative) and the class index supplies
// the (n-1)² interior signs; without reduction it supplies all n².
inline RealTensor sign_class_matrix(std::int64_t n, std::int64_t cls, bool reduced) {
  std::vector<double> e(static_cast<std::size_t>(n * n), 1.0);
  if (reduced) {
    for (std::int64_t i = 1; i < n; ++i)
      for (std::int64_t j = 1; j < n; ++j) {
        const std::int64_t bit = (i - 1) * (n - 1) + (j - 1);
        e[static_cast<std::size_t>(i * n + j)] = (cls >> bit) & 1 ? -1.0 : 1.0;
      }
  } else {
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = 0; j < n; ++j)
        e[static_cast<std::size_t>(i * n + j)] = (cls >> (i * n + j)) & 1 ? -1.0 : 1.0;
  }
  return RealTensor({n, n}, std::move(e));
}

// Exhaustive maximum of mixed(2,1)/opnorm over n×n sign matrices, the
// empirical optimal constant of the bilinear sup-exponent inequality at
// size n. Exact enumeration opnorms; the theorem caps the result at √2,
// enforced as a hard assertion. Chunked scanning keeps the argmax (lowest
// class index on ties) identical for every worker count.
inline ConstantSearchReport search_constant(std::int64_t n, bool reduce_symmetry = true,
                                            std::int64_t budget = kDefaultBudget, int jobs = 1) {
  if (n < 1) throw DomainError("search: n must be >= 1");
  const std::int64_t bits = reduce_symmetry ? (n - 1) * (n - 1) : n * n;
  if (bits >= 62 || (std::int64_t{1} << bits) > budget)
    throw BudgetError("search at n = " + std::to_string(n) + " needs 2^" + std::to_string(bits) +
                      " classes, over budget " + std::to_string(budget));
  const std::int64_t classes = std::int64_t{1} << bits;

  const auto t0 = std::chrono::steady_clock::now();
  const MixedNormSpec mspec = make_mixed_spec({1, 2}, {ExtExp::of(2), ExtExp::of(1)});

  const std::int64_t chunk = 1024;
  const std::int64_t n_chunks = (classes + chunk - 1) / chunk;
  std::vector<std::pair<double, std::int64_t>> chunk_best(
      static_cast<std::size_t>(n_chunks), {-1.0, -1});
  parallel_for(n_chunks, jobs, [&](std::int64_t ci) {
    const std::int64_t lo = ci * chunk;
    const std::int64_t hi = std::min(classes, lo + chunk);
    double best = -1.0;
    std::int64_t best_cls = -1;
    for (std::int64_t cls = lo; cls < hi; ++cls) {
      const RealTensor M = sign_class_matrix(n, cls, reduce_symmetry);
      const double mixed = mixed_norm(M, mspec);
      const OpNormEstimate<double> est =
          opnorm_exact_signs(M, std::numeric_limits<std::int64_t>::max());
      const double ratio = safe_ratio(mixed, est.value);
      if (ratio > std::sqrt(2.0) + 1e-12)
        throw HardAssertionError("theorem bound violated in search: ratio " + format_g12(ratio) +
                                 " at class " + std::to_string(cls));
      if (ratio > best) {
        best = ratio;
        best_cls = cls;
      }
    }
    chunk_best[static_cast<std::size_t>(ci)] = {best, best_cls};
  });

  ConstantSearchReport rep;
  rep.n = n;
  rep.reduced = reduce_symmetry;
  rep.classes = classes;
  rep.best_ratio = -1.0;
  for (const auto& [ratio, cls] : chunk_best) {
    if (ratio > rep.best_ratio) {  // strict: ties keep the lowest class index
      rep.best_ratio = ratio;
      rep.best_class = cls;
    }
  }
  rep.best_matrix.emplace(sign_class_matrix(n, rep.best_class, reduce_symmetry));
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// -------- configuration and report serialization --------

struct ExperimentConfig {
  ProblemSpec spec = make_spec(2, {ExtExp::inf(), ExtExp::inf()});
  ExponentTuple q = {ExtExp::of(2)};
  FamilyDescriptor family{.kind = "hadamard", .m = 2, .n = 2};
  std::vector<std::int64_t> n_range;
  std::vector<std::uint64_t> seeds;
  std::int64_t budget = kDefaultBudget;
  double tol = 1e-12;
  int starts = 32;
  int max_sweeps = 200;
  std::uint64_t ascent_seed = 0;
  double slope_threshold = 0.05;
  int jobs = 1;
  std::string experiment_id;
  std::string output_path;
  std::string output_format = "csv";

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

inline RunOptions run_options(const ExperimentConfig& c) {
  RunOptions o;
  o.budget = c.budget;
  o.ascent.starts = c.starts;
  o.ascent.seed = c.ascent_seed;
  o.ascent.tol = c.tol;
  o.ascent.max_sweeps = c.max_sweeps;
  o.ascent.jobs = 1;  // parallelism lives at the instance level
  o.jobs = c.jobs;
  o.slope_threshold = c.slope_threshold;
  o.experiment_id = c.experiment_id;
  return o;
}

inline std::vector<std::string> exponent_strings(const ExponentTuple& t) {
  std::vector<std::string> out;
  out.reserve(t.size());
  for (const ExtExp& e : t) out.push_back(e.str());
  return out;
}

inline nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["spec"] = {{"m", c.spec.m},
               {"p", exponent_strings(c.spec.p)},
               {"sigma", c.spec.sigma},
               {"field", field_name(c.spec.field)}};
  j["q"] = exponent_strings(c.q);
  nlohmann::json fam = {{"kind", c.family.kind}, {"m", c.family.m},   {"n", c.family.n},
                        {"pins", c.family.pins}, {"seed", c.family.seed}};
  fam["codomain_r"] =
      c.family.codomain_r.has_value() ? nlohmann::json(c.family.codomain_r->str())
                                      : nlohmann::json(nullptr);
  j["family"] = std::move(fam);
  j["n_range"] = c.n_range;
  j["seeds"] = c.seeds;
  j["budget"] = c.budget;
  j["tol"] = c.tol;
  j["starts"] = c.starts;
  j["max_sweeps"] = c.max_sweeps;
  j["ascent_seed"] = c.ascent_seed;
  j["slope_threshold"] = c.slope_threshold;
  j["jobs"] = c.jobs;
  j["experiment_id"] = c.experiment_id;
  j["output_path"] = c.output_path;
  j["output_format"] = c.output_format;
  return j;
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  try {
    ExperimentConfig c;
    const nlohmann::json& s = j.at("spec");
    ExponentTuple p;
    for (const auto& e : s.at("p")) p.push_back(ExtExp::parse(e.get<std::string>()));
    c.spec = make_spec(s.at("m").get<int>(), std::move(p),
                       s.at("sigma").get<std::vector<int>>(),
                       parse_field(s.at("field").get<std::string>()));
    c.q.clear();
    for (const auto& e : j.at("q")) c.q.push_back(ExtExp::parse(e.get<std::string>(), true));
    const nlohmann::json& f = j.at("family");
    c.family.kind = f.at("kind").get<std::string>();
    c.family.m = f.at("m").get<int>();
    c.family.n = f.at("n").get<std::int64_t>();
    c.family.pins = f.at("pins").get<int>();
    c.family.seed = f.at("seed").get<std::uint64_t>();
    if (!f.at("codomain_r").is_null())
      c.family.codomain_r = ExtExp::parse(f.at("codomain_r").get<std::string>());
    c.n_range = j.at("n_range").get<std::vector<std::int64_t>>();
    c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    c.budget = j.at("budget").get<std::int64_t>();
    c.tol = j.at("tol").get<double>();
    c.starts = j.at("starts").get<int>();
    c.max_sweeps = j.at("max_sweeps").get<int>();
    c.ascent_seed = j.at("ascent_seed").get<std::uint64_t>();
    c.slope_threshold = j.at("slope_threshold").get<double>();
    c.jobs = j.at("jobs").get<int>();
    c.experiment_id = j.at("experiment_id").get<std::string>();
    c.output_path = j.at("output_path").get<std::string>();
    c.output_format = j.at("output_format").get<std::string>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed experiment config: ") + e.what());
  }
}

// CSV layout (one header, one line per row, one summary line):
//   experiment_id,n,seed,mixed_norm,opnorm,opnorm_exact,ratio,slope,verdict
// slope and verdict are filled only on the summary line.
inline void write_rows_csv(std::ostream& out, const std::vector<RatioRow>& rows,
                           const std::string& id, std::optional<double> slope,
                           const std::string& verdict) {
  out << "experiment_id,n,seed,mixed_norm,opnorm,opnorm_exact,ratio,slope,verdict\n";
  for (const RatioRow& r : rows)
    out << (r.experiment_id.empty() ? id : r.experiment_id) << ',' << r.n << ',' << r.seed << ','
        << format_g12(r.mixed_norm) << ',' << format_g12(r.opnorm) << ','
        << (r.opnorm_exact ? "true" : "false") << ',' << format_g12(r.ratio) << ",,\n";
  out << id << ",,,,,,," << (slope.has_value() ? format_g12(*slope) : std::string()) << ','
      << verdict << "\n";
}

inline void write_csv_file(const std::string& path, const std::vector<RatioRow>& rows,
                           const std::string& id, std::optional<double> slope,
                           const std::string& verdict) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  write_rows_csv(out, rows, id, slope, verdict);
  if (!out) throw IoError("write failed: " + path);
}

inline nlohmann::json rows_to_json(const std::vector<RatioRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const RatioRow& r : rows)
    arr.push_back({{"experiment_id", r.experiment_id},
                   {"n", r.n},
                   {"seed", r.seed},
                   {"mixed_norm", r.mixed_norm},
                   {"opnorm", r.opnorm},
                   {"opnorm_exact", r.opnorm_exact},
                   {"ratio", r.ratio}});
  return arr;
}

inline nlohmann::json thresholds_to_json(const OrlThresholds& th) {
  return {{"inner", th.inner.str()},
          {"q_min", exponent_strings(th.q_min)},
          {"mu", th.mu.str()},
          {"dual_cotype", th.dual_cotype.str()},
          {"degenerate", th.degenerate}};
}

inline nlohmann::json verify_report_to_json(const VerifyReport& rep,
                                            const ExperimentConfig* config_echo = nullptr) {
  nlohmann::json j;
  if (config_echo) j["config"] = config_to_json(*config_echo);
  j["rows"] = rows_to_json(rep.rows);
  j["max_ratio"] = rep.max_ratio;
  j["exponents"] = exponent_strings(rep.exps);
  j["thresholds"] = thresholds_to_json(rep.admissibility.thresholds);
  j["admissible"] = rep.admissibility.admissible;
  j["position_pass"] = rep.admissibility.position_pass;
  j["sqrt2_guard"] = rep.sqrt2_guard;
  return j;
}

inline nlohmann::json growth_report_to_json(const GrowthReport& rep,
                                            const ExperimentConfig* config_echo = nullptr) {
  nlohmann::json j;
  if (config_echo) j["config"] = config_to_json(*config_echo);
  j["rows"] = rows_to_json(rep.rows);
  nlohmann::json med = nlohmann::json::array();
  for (const auto& [n, v] : rep.medians) med.push_back({{"n", n}, {"median_ratio", v}});
  j["medians"] = std::move(med);
  j["slope"] = rep.slope;
  j["r2"] = rep.r2;
  j["verdict"] = rep.verdict;
  j["truncated"] = rep.truncated;
  j["warning"] = rep.warning;
  return j;
}

inline nlohmann::json search_report_to_json(const ConstantSearchReport& rep,
                                            const ExperimentConfig* config_echo = nullptr) {
  nlohmann::json j;
  if (config_echo) j["config"] = config_to_json(*config_echo);
  j["n"] = rep.n;
  j["reduced"] = rep.reduced;
  j["classes"] = rep.classes;
  j["best_ratio"] = rep.best_ratio;
  j["best_class"] = rep.best_class;
  if (rep.best_matrix.has_value()) {
    j["best_matrix"] = {{"dims", rep.best_matrix->dims()},
                        {"field", "real"},
                        {"entries", rep.best_matrix->entries()}};
  }
  j["wall_seconds"] = rep.wall_seconds;
  return j;
}

}  // namespace mixnorm

#endif  // MIXNORM_EXPERIMENTS_HPP
