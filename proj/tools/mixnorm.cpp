// Command-line front door for the mixed-norm laboratory: exact exponent
// thresholds, mixed norms, operator norms, inequality verification, growth
// probes, and the exhaustive sign-matrix constant search.
//
// Exit codes: 0 success, 1 unexpected failure, 2 usage/domain error,
// 3 file/serialization error, 4 budget exceeded, 5 shape mismatch,
// 6 hard assertion (a theorem bound failed numerically — a library bug).

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixnorm/errors.hpp"
#include "mixnorm/experiments.hpp"
#include "mixnorm/exponents.hpp"
#include "mixnorm/opnorm.hpp"
#include "mixnorm/tensor.hpp"
#include "mixnorm/tensor_io.hpp"
#include "mixnorm/witness.hpp"

namespace {

using namespace mixnorm;

std::int64_t env_default_budget() {
  if (const char* s = std::getenv("MIXNORM_BUDGET")) {
    try {
      return Rational::parse(s).num();
    } catch (const Error&) {
      throw DomainError(std::string("MIXNORM_BUDGET is not an integer: '") + s + "'");
    }
  }
  return kDefaultBudget;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const Rational r = Rational::parse(text.substr(start, comma - start));
    if (!r.is_integer()) throw DomainError("expected an integer list, got '" + text + "'");
    out.push_back(static_cast<int>(r.num()));
    start = comma + 1;
  }
  return out;
}

std::vector<std::int64_t> parse_int64_list(const std::string& text) {
  std::vector<std::int64_t> out;
  for (int v : parse_int_list(text)) out.push_back(v);
  return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (int v : parse_int_list(text)) {
    if (v < 0) throw DomainError("seeds must be nonnegative");
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

// Shared flag bundle for subcommands that run experiments.
struct CommonArgs {
  int m = 2;
  std::string p_text;
  std::string q_text;
  std::string sigma_text;
  std::string field_text = "real";
  std::string family;
  std::int64_t n = 0;
  int k = -1;  // Sylvester order exponent; sets n = 2^k
  int pins = 1;
  std::string seeds_text;
  std::string codomain_r_text;
  std::int64_t budget = 0;  // 0 = use env/default
  int jobs = 1;
  int starts = 32;
  std::uint64_t seed = 0;
  double tol = 1e-12;
  int max_sweeps = 200;
  double slope_threshold = 0.05;
  std::string id;
  std::string out_path;
  std::string format = "csv";
};

std::int64_t effective_budget(std::int64_t flag_value) {
  return flag_value > 0 ? flag_value : env_default_budget();
}

ProblemSpec spec_from(const CommonArgs& a) {
  ExponentTuple p = parse_exponent_list(a.p_text, /*allow_decimal=*/false);
  std::vector<int> sigma = a.sigma_text.empty() ? identity_permutation(a.m)
                                                : parse_int_list(a.sigma_text);
  return make_spec(a.m, std::move(p), std::move(sigma), parse_field(a.field_text));
}

// Accepts either the m-1 outer exponents or the full m-tuple whose last
// entry must then equal the forced innermost exponent conjugate(p_σ(m)).
ExponentTuple outer_exponents(const ProblemSpec& spec, const std::string& q_text) {
  ExponentTuple q = parse_exponent_list(q_text, /*allow_decimal=*/true);
  if (static_cast<int>(q.size()) == spec.m) {
    const ExtExp inner = orl_thresholds(spec).inner;
    if (!(q.back() == inner))
      throw DomainError("the innermost exponent is determined by p: conjugate(p_sigma(m)) = " +
                        inner.str() + "; pass " + std::to_string(spec.m - 1) +
                        " exponents or match it");
    q.pop_back();
  }
  if (static_cast<int>(q.size()) != spec.m - 1)
    throw DomainError("expected " + std::to_string(spec.m - 1) + " mixed-norm exponents, got " +
                      std::to_string(q.size()));
  return q;
}

FamilyDescriptor family_from(const CommonArgs& a) {
  FamilyDescriptor f;
  f.kind = a.family;
  f.m = a.m;
  f.n = a.k >= 0 ? (std::int64_t{1} << a.k) : a.n;
  f.pins = a.pins;
  f.seed = a.seed;
  if (!a.codomain_r_text.empty()) f.codomain_r = ExtExp::parse(a.codomain_r_text);
  return f;
}

ExperimentConfig config_from(const CommonArgs& a, const ProblemSpec& spec,
                             const ExponentTuple& q, const FamilyDescriptor& fam,
                             std::vector<std::int64_t> n_range,
                             std::vector<std::uint64_t> seeds) {
  ExperimentConfig c;
  c.spec = spec;
  c.q = q;
  c.family = fam;
  c.n_range = std::move(n_range);
  c.seeds = std::move(seeds);
  c.budget = effective_budget(a.budget);
  c.tol = a.tol;
  c.starts = a.starts;
  c.max_sweeps = a.max_sweeps;
  c.ascent_seed = a.seed;
  c.slope_threshold = a.slope_threshold;
  c.jobs = a.jobs;
  c.experiment_id = a.id;
  c.output_path = a.out_path;
  c.output_format = a.format;
  return c;
}

void add_ascent_flags(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--starts", a.starts, "ascent starts (default 32)");
  cmd->add_option("--seed", a.seed, "ascent / family seed");
  cmd->add_option("--tol", a.tol, "ascent relative stopping tolerance");
  cmd->add_option("--max-sweeps", a.max_sweeps, "ascent sweep cap");
}

void add_run_flags(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--budget", a.budget, "enumeration budget (default: MIXNORM_BUDGET or 2^22)");
  cmd->add_option("--jobs", a.jobs, "worker threads (never affects results)");
  cmd->add_option("--id", a.id, "experiment id written into reports");
  cmd->add_option("--out", a.out_path, "report file path");
  cmd->add_option("--format", a.format, "report format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
}

nlohmann::json estimate_to_json_real(const OpNormEstimate<double>& e) {
  nlohmann::json cert = nlohmann::json::array();
  for (const auto& x : e.certificate) cert.push_back(x);
  return {{"value", e.value},          {"method", method_name(e.method)},
          {"exact", e.exact},          {"starts", e.starts},
          {"sweeps", e.sweeps},        {"certificate", std::move(cert)}};
}

nlohmann::json estimate_to_json_complex(const OpNormEstimate<std::complex<double>>& e) {
  nlohmann::json cert = nlohmann::json::array();
  for (const auto& x : e.certificate) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& z : x) v.push_back(nlohmann::json::array({z.real(), z.imag()}));
    cert.push_back(std::move(v));
  }
  return {{"value", e.value},          {"method", method_name(e.method)},
          {"exact", e.exact},          {"starts", e.starts},
          {"sweeps", e.sweeps},        {"certificate", std::move(cert)}};
}

void emit_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

// ---- subcommand bodies ----

void run_exponents(const CommonArgs& a) {
  const ProblemSpec spec = spec_from(a);
  nlohmann::json j = thresholds_to_json(orl_thresholds(spec));
  if (!a.q_text.empty()) {
    const ExponentTuple q = parse_exponent_list(a.q_text, /*allow_decimal=*/true);
    const AdmissibilityVerdict v = orl_admissible(spec, q);
    j["q"] = exponent_strings(q);
    j["position_pass"] = v.position_pass;
    j["admissible"] = v.admissible;
  }
  std::cout << j.dump(2) << "\n";
}

void run_mixed_norm(const CommonArgs& a, const std::string& tensor_path,
                    const std::string& order_text) {
  const TensorVariant T = read_tensor_file(tensor_path);
  const ExponentTuple exps = parse_exponent_list(a.q_text, /*allow_decimal=*/true);
  const double value = std::visit(
      [&](const auto& t) {
        std::vector<int> order = order_text.empty() ? identity_permutation(t.rank())
                                                    : parse_int_list(order_text);
        return mixed_norm(t, make_mixed_spec(std::move(order), exps));
      },
      T);
  std::cout << "mixed_norm=" << format_g12(value) << "\n";
}

void run_opnorm(const CommonArgs& a, const std::string& tensor_path, const std::string& method) {
  const TensorVariant T = read_tensor_file(tensor_path);
  const ExponentTuple p = parse_exponent_list(a.p_text, /*allow_decimal=*/false);
  const std::int64_t budget = effective_budget(a.budget);
  AscentOptions opt;
  opt.starts = a.starts;
  opt.seed = a.seed;
  opt.tol = a.tol;
  opt.max_sweeps = a.max_sweeps;
  opt.jobs = a.jobs;

  std::visit(
      [&](const auto& t) {
        using TT = std::decay_t<decltype(t)>;
        using Scalar = std::decay_t<decltype(t.entries().front())>;
        if (static_cast<int>(p.size()) != t.rank())
          throw ShapeError("opnorm: need one exponent per tensor axis");
        OpNormEstimate<Scalar> est;
        if (method == "auto") {
          est = opnorm_best(t, p, budget, opt);
        } else if (method == "ascent") {
          est = opnorm_ascent(t, p, opt);
        } else if (method == "exact-signs") {
          if constexpr (std::same_as<TT, ComplexTensor>) {
            throw DomainError("sign enumeration is defined for the real field only");
          } else {
            for (const ExtExp& e : p)
              if (!e.is_inf())
                throw DomainError("sign enumeration applies only when every p is inf");
            est = opnorm_exact_signs(t, budget);
          }
        } else if (method == "diagonal") {
          if (!is_diagonal(t)) throw DomainError("tensor is not diagonal");
          est = opnorm_diagonal_closed_form(diagonal_of(t), p);
        } else {
          throw DomainError("unknown method '" + method + "'");
        }
        char value_text[64];
        std::snprintf(value_text, sizeof value_text, "%.6f", est.value);
        std::cout << "opnorm=" << value_text << " method=" << method_name(est.method)
                  << (est.exact ? " exact" : " lower-bound") << "\n";
        if (!a.out_path.empty()) {
          if constexpr (std::same_as<TT, ComplexTensor>) {
            emit_json(a.out_path, estimate_to_json_complex(est));
          } else {
            emit_json(a.out_path, estimate_to_json_real(est));
          }
        }
      },
      T);
}

void run_verify(const CommonArgs& a, const std::vector<std::string>& tensor_paths) {
  const ProblemSpec spec = spec_from(a);
  const ExponentTuple q = outer_exponents(spec, a.q_text);

  std::vector<LabeledTensor> instances;
  FamilyDescriptor fam;
  std::vector<std::uint64_t> seeds;
  if (!tensor_paths.empty()) {
    for (const std::string& path : tensor_paths)
      instances.push_back({path, 0, read_tensor_file(path)});
  } else {
    if (a.family.empty())
      throw DomainError("verify needs --family or at least one --tensor");
    fam = family_from(a);
    seeds = a.seeds_text.empty() ? std::vector<std::uint64_t>{a.seed}
                                 : parse_u64_list(a.seeds_text);
    if (fam.kind == "random-sign") {
      for (std::uint64_t s : seeds)
        instances.push_back({fam.kind + "-n" + std::to_string(fam.n) + "-s" + std::to_string(s),
                             s, scalar_instance(fam, fam.n, s)});
    } else {
      instances.push_back({fam.kind + "-n" + std::to_string(fam.n), fam.seed,
                           scalar_instance(fam, fam.n, fam.seed)});
    }
  }

  const ExperimentConfig cfg = config_from(a, spec, q, fam, {}, seeds);
  VerifyReport rep = verify_inequality(spec, q, instances, run_options(cfg));

  if (!a.out_path.empty()) {
    if (a.format == "json") {
      emit_json(a.out_path, verify_report_to_json(rep, &cfg));
    } else {
      write_csv_file(a.out_path, rep.rows, cfg.experiment_id.empty() ? "verify" : cfg.experiment_id,
                     std::nullopt, "pass");
    }
  }
  std::cout << "max_ratio=" << format_g12(rep.max_ratio)
            << ", admissible=" << (rep.admissibility.admissible ? "yes" : "no") << ", PASS\n";
}

void run_probe(const CommonArgs& a, const std::string& n_range_text,
               const std::string& config_path) {
  ExperimentConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw IoError("cannot open config file: " + config_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw IoError("malformed json in " + config_path + ": " + e.what());
    }
    cfg = config_from_json(j);
  } else {
    const ProblemSpec spec = spec_from(a);
    const ExponentTuple q = outer_exponents(spec, a.q_text);
    if (a.family.empty()) throw DomainError("probe needs --family");
    cfg = config_from(a, spec, q, family_from(a), parse_int64_list(n_range_text),
                      a.seeds_text.empty() ? std::vector<std::uint64_t>{}
                                           : parse_u64_list(a.seeds_text));
  }

  GrowthReport rep =
      probe_optimality(cfg.spec, cfg.q, cfg.family, cfg.n_range, cfg.seeds, run_options(cfg));

  const std::string& out_path = cfg.output_path;
  if (!out_path.empty()) {
    if (cfg.output_format == "json") {
      emit_json(out_path, growth_report_to_json(rep, &cfg));
    } else {
      write_csv_file(out_path, rep.rows,
                     cfg.experiment_id.empty() ? "probe" : cfg.experiment_id, rep.slope,
                     rep.verdict);
    }
  }
  if (rep.truncated) std::cerr << "warning: " << rep.warning << "\n";
  std::cout << "slope=" << format_g12(rep.slope) << ", r2=" << format_g12(rep.r2)
            << ", verdict=" << rep.verdict << "\n";
}

void run_search(const CommonArgs& a, std::int64_t n, bool no_reduce) {
  const ConstantSearchReport rep =
      search_constant(n, !no_reduce, effective_budget(a.budget), a.jobs);
  if (!a.out_path.empty()) emit_json(a.out_path, search_report_to_json(rep));
  std::cout << "max_ratio=" << format_g12(rep.best_ratio) << ", classes=" << rep.classes << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for mixed-norm inequalities of multilinear forms"};
  app.require_subcommand(1);

  CommonArgs ax;  // exponents
  CLI::App* cmd_exp = app.add_subcommand("exponents", "exact admissibility thresholds");
  cmd_exp->add_option("--m", ax.m, "arity")->required();
  cmd_exp->add_option("--p", ax.p_text, "space exponents, e.g. inf,inf or 4,4/3")->required();
  cmd_exp->add_option("--sigma", ax.sigma_text, "summation order (1-based axes, outermost first)");
  cmd_exp->add_option("--q", ax.q_text, "optional exponent tuple to test for admissibility");
  cmd_exp->add_option("--field", ax.field_text, "real | complex");

  CommonArgs am;  // mixed-norm
  std::string mn_tensor, mn_order;
  CLI::App* cmd_mn = app.add_subcommand("mixed-norm", "nested norm of a tensor file");
  cmd_mn->add_option("--tensor", mn_tensor, "tensor json file")->required();
  cmd_mn->add_option("--q", am.q_text, "exponents, outermost first (decimals ok)")->required();
  cmd_mn->add_option("--order", mn_order, "axis aggregation order (default 1,2,...)");

  CommonArgs ao;  // opnorm
  std::string on_tensor, on_method = "auto";
  CLI::App* cmd_on = app.add_subcommand("opnorm", "operator norm over lp balls");
  cmd_on->add_option("--tensor", on_tensor, "tensor json file")->required();
  cmd_on->add_option("--p", ao.p_text, "space exponents")->required();
  cmd_on->add_option("--method", on_method, "auto | ascent | exact-signs | diagonal");
  add_ascent_flags(cmd_on, ao);
  cmd_on->add_option("--budget", ao.budget, "enumeration budget");
  cmd_on->add_option("--jobs", ao.jobs, "worker threads");
  cmd_on->add_option("--out", ao.out_path, "write the estimate as json");

  CommonArgs av;  // verify
  std::vector<std::string> v_tensors;
  CLI::App* cmd_v = app.add_subcommand("verify", "ratio table mixed-norm / opnorm");
  cmd_v->add_option("--m", av.m, "arity (default 2)");
  cmd_v->add_option("--p", av.p_text, "space exponents")->required();
  cmd_v->add_option("--q", av.q_text, "mixed exponents (m-1 outer, or full with forced inner)")
      ->required();
  cmd_v->add_option("--sigma", av.sigma_text, "summation order");
  cmd_v->add_option("--field", av.field_text, "real | complex");
  cmd_v->add_option("--family", av.family, "diagonal | pinned-diagonal | hadamard | random-sign");
  cmd_v->add_option("--n", av.n, "family size");
  cmd_v->add_option("--k", av.k, "Sylvester order exponent (n = 2^k)");
  cmd_v->add_option("--pins", av.pins, "pinned index count");
  cmd_v->add_option("--seeds", av.seeds_text, "seed list for random families");
  cmd_v->add_option("--tensor", v_tensors, "explicit tensor json files");
  add_ascent_flags(cmd_v, av);
  add_run_flags(cmd_v, av);

  CommonArgs ap;  // probe
  std::string p_n_range, p_config;
  CLI::App* cmd_p = app.add_subcommand("probe", "growth of the ratio along a witness family");
  cmd_p->add_option("--config", p_config, "experiment config json (overrides flags)");
  cmd_p->add_option("--m", ap.m, "arity (default 2)");
  cmd_p->add_option("--p", ap.p_text, "space exponents");
  cmd_p->add_option("--q", ap.q_text, "mixed exponents (decimals ok)");
  cmd_p->add_option("--sigma", ap.sigma_text, "summation order");
  cmd_p->add_option("--field", ap.field_text, "real | complex");
  cmd_p->add_option("--family", ap.family, "diagonal | pinned-diagonal | hadamard | random-sign");
  cmd_p->add_option("--pins", ap.pins, "pinned index count");
  cmd_p->add_option("--codomain-r", ap.codomain_r_text, "codomain exponent (vector-valued mode)");
  cmd_p->add_option("--n-range", p_n_range, "sizes, e.g. 4,6,8,12,16");
  cmd_p->add_option("--seeds", ap.seeds_text, "seed list for random families");
  cmd_p->add_option("--slope-threshold", ap.slope_threshold, "growth verdict cutoff");
  add_ascent_flags(cmd_p, ap);
  add_run_flags(cmd_p, ap);

  CommonArgs as;  // search-constant
  std::int64_t s_n = 2;
  bool s_no_reduce = false;
  CLI::App* cmd_s = app.add_subcommand("search-constant",
                                       "exhaustive best ratio over n x n sign matrices");
  cmd_s->add_option("--n", s_n, "matrix size")->required();
  cmd_s->add_flag("--no-reduce", s_no_reduce, "skip row/column negation symmetry reduction");
  cmd_s->add_option("--budget", as.budget, "class budget");
  cmd_s->add_option("--jobs", as.jobs, "worker threads");
  cmd_s->add_option("--out", as.out_path, "write the report as json");

  cmd_exp->callback([&] { run_exponents(ax); });
  cmd_mn->callback([&] { run_mixed_norm(am, mn_tensor, mn_order); });
  cmd_on->callback([&] { run_opnorm(ao, on_tensor, on_method); });
  cmd_v->callback([&] { run_verify(av, v_tensors); });
  cmd_p->callback([&] { run_probe(ap, p_n_range, p_config); });
  cmd_s->callback([&] { run_search(as, s_n, s_no_reduce); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const HardAssertionError& e) {
    std::cerr << "HARD ASSERTION: " << e.what() << "\n";
    return 6;
  } catch (const ShapeError& e) {
    std::cerr << "shape error: " << e.what() << "\n";
    return 5;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 4;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
