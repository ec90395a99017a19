// cardguess: complete-feedback card guessing games and the birthday problem
// for sampling without replacement. Emits CSV; see README for the schemas.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "cardguess/analytics.hpp"
#include "cardguess/birthday.hpp"
#include "cardguess/coupling.hpp"
#include "cardguess/deck.hpp"
#include "cardguess/game.hpp"
#include "cardguess/montecarlo.hpp"
#include "cardguess/oracle.hpp"

namespace {

using namespace cardguess;

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

std::string join(const std::vector<std::string>& fields, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += sep;
    out += fields[i];
  }
  return out;
}

struct output_target {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit output_target(const std::string& path) {
    if (!path.empty()) {
      file.open(path, std::ios::binary);  // keep "\n" endings everywhere
      if (!file) throw std::invalid_argument("cannot open output file " + path);
      stream = &file;
    }
  }
  void line(const std::string& s) { *stream << s << '\n'; }
};

struct common_options {
  int n = 0;
  int m = 0;
  std::string mults;
  long long trials = 10'000;
  std::uint64_t seed = 42;
  int threads = 0;
  std::string out;
};

void add_deck_flags(CLI::App* cmd, common_options& opt) {
  cmd->add_option("--n", opt.n, "number of card types (with --m)");
  cmd->add_option("--m", opt.m, "multiplicity of every type (with --n)");
  cmd->add_option("--mults", opt.mults,
                  "comma-separated multiplicities, e.g. 2,4,4");
}

void add_run_flags(CLI::App* cmd, common_options& opt) {
  cmd->add_option("--trials", opt.trials, "Monte Carlo trials")
      ->default_val(10'000);
  cmd->add_option("--seed", opt.seed, "master seed")->default_val(42);
  cmd->add_option("--threads", opt.threads, "worker threads (0 = auto)")
      ->default_val(0);
}

void add_out_flag(CLI::App* cmd, common_options& opt) {
  cmd->add_option("--out", opt.out, "output file (default: stdout)");
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      values.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("bad ") + what + " entry: " + item);
    }
  }
  if (values.empty()) {
    throw std::invalid_argument(std::string("empty ") + what + " list");
  }
  return values;
}

deck_spec resolve_spec(const common_options& opt) {
  const bool has_even = opt.m > 0;
  const bool has_mults = !opt.mults.empty();
  if (has_even == has_mults) {
    throw std::invalid_argument("supply exactly one of --m/--n or --mults");
  }
  if (has_even) {
    if (opt.n <= 0) throw std::invalid_argument("--m requires --n >= 1");
    return even_spec(opt.m, opt.n);
  }
  return make_spec(parse_int_list(opt.mults, "--mults"));
}

strategy parse_mode(const std::string& mode) {
  if (mode == "best") return strategy::best;
  if (mode == "worst") return strategy::worst;
  throw std::invalid_argument("mode must be best or worst");
}

approx_report approximate(const deck_spec& spec, strategy mode,
                          bool all_terms) {
  return mode == strategy::best ? approx_best(spec)
                                : approx_worst(spec, all_terms);
}

// ---------------------------------------------------------------------------

void cmd_approx(const common_options& opt, const std::string& mode_name,
                bool all_terms) {
  const auto spec = resolve_spec(opt);
  const auto mode = parse_mode(mode_name);
  const auto report = approximate(spec, mode, all_terms);

  output_target out(opt.out);
  std::vector<std::string> header{"mode", "deck",        "n",
                                  "all_terms", "value", "error_order"};
  std::vector<std::string> row{mode_name,
                               describe(spec),
                               std::to_string(spec.n),
                               all_terms ? "1" : "0",
                               fmt(report.value),
                               report.error_order};
  for (const auto& term : report.terms) {
    header.push_back("term_" + std::to_string(term.index));
    row.push_back(fmt(term.value));
  }
  out.line(join(header));
  out.line(join(row));
}

void emit_simulate_row(output_target& out, const deck_spec& spec,
                       strategy mode, const common_options& opt,
                       const std::string& mode_name) {
  const auto summary =
      run_score_trials(spec, mode, opt.trials, opt.seed, opt.threads);
  const auto report = approximate(spec, mode, false);
  const double relative = (summary.mean - report.value) / summary.mean;
  out.line(join({std::to_string(spec.n), describe(spec), mode_name,
                 std::to_string(opt.trials), std::to_string(opt.seed),
                 fmt(summary.mean), fmt(summary.std_error), fmt(report.value),
                 fmt(relative)}));
}

void cmd_simulate(const common_options& opt, const std::string& mode_name) {
  const auto spec = resolve_spec(opt);
  const auto mode = parse_mode(mode_name);
  // fail before burning trials if the approximation is undefined
  approximate(spec, mode, false);

  output_target out(opt.out);
  out.line("n,deck,mode,trials,seed,mean,stderr,approx,relative_error");
  emit_simulate_row(out, spec, mode, opt, mode_name);
}

void cmd_table1(const common_options& opt) {
  output_target out(opt.out);
  out.line(
      "m,n,trials,seed,approximation,empirical_mean,relative_error,"
      "relative_error_pct");
  for (int m : {3, 4}) {
    for (int n : {10'000, 50'000, 100'000}) {
      const auto spec = even_spec(m, n);
      const double approx = approx_worst(spec).value;
      const auto summary = run_score_trials(spec, strategy::worst, opt.trials,
                                            opt.seed, opt.threads);
      const double relative = (summary.mean - approx) / summary.mean;
      out.line(join({std::to_string(m), std::to_string(n),
                     std::to_string(opt.trials), std::to_string(opt.seed),
                     fmt(approx), fmt(summary.mean), fmt(relative),
                     fmt(100.0 * relative)}));
    }
  }
}

void cmd_birthday(const common_options& opt, int j, std::string grid_text,
                  int t_max, int t_step, const std::string& orientation) {
  const auto spec = resolve_spec(opt);
  std::vector<int> grid;
  if (!grid_text.empty()) {
    grid = parse_int_list(grid_text, "--t-grid");
  } else {
    if (t_max < 0) {
      t_max = static_cast<int>(std::min<long long>(spec.total_cards, spec.n));
    }
    for (int t = 0; t <= t_max; t += std::max(1, t_step)) grid.push_back(t);
  }
  const auto order = orientation == "top-down" ? scan_order::top_down
                                               : scan_order::bottom_up;
  const auto curve = estimate_survival(spec, j, grid, opt.trials, opt.seed,
                                       order, opt.threads);

  output_target out(opt.out);
  out.line("t,lambda,empirical_survival,exp_minus_lambda,abs_diff,t_over_n");
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    const int t = curve.times[i];
    const auto approx = survival_approx(spec, j, t);
    const double lambda = lambda_stat(spec, j, t);
    out.line(join({std::to_string(t), fmt(lambda), fmt(curve.survival[i]),
                   fmt(approx.value),
                   fmt(std::abs(curve.survival[i] - approx.value)),
                   fmt(approx.error_scale)}));
  }
}

void cmd_joint(const common_options& opt, const std::string& times_text) {
  const auto spec = resolve_spec(opt);
  const auto times = parse_int_list(times_text, "--times");
  const auto joint = estimate_joint_survival(spec, times, opt.trials, opt.seed,
                                             opt.threads);
  std::vector<std::string> time_names;
  std::vector<std::string> lambda_names;
  for (std::size_t i = 0; i < times.size(); ++i) {
    time_names.push_back(std::to_string(times[i]));
    lambda_names.push_back(
        fmt(lambda_stat(spec, static_cast<int>(i) + 1, times[i])));
  }
  output_target out(opt.out);
  out.line("k,times,lambdas,joint_empirical,product_exp,abs_diff");
  out.line(join({std::to_string(times.size()), join(time_names, ';'),
                 join(lambda_names, ';'), fmt(joint.joint),
                 fmt(joint.product_of_exponentials),
                 fmt(std::abs(joint.joint - joint.product_of_exponentials))}));
}

// ---------------------------------------------------------------------------
// oracle subcommands

void cmd_oracle_score(const common_options& opt, const std::string& mode_name) {
  const auto spec = resolve_spec(opt);
  const auto mode = parse_mode(mode_name);
  output_target out(opt.out);
  out.line("deck,mode,value");
  out.line(join({describe(spec), mode_name,
                 fmt(exact_expected_score(spec, mode))}));
}

void cmd_oracle_survival(const common_options& opt, int j, int t) {
  const auto spec = resolve_spec(opt);
  output_target out(opt.out);
  out.line("deck,j,t,survival");
  out.line(join({describe(spec), std::to_string(j), std::to_string(t),
                 fmt(exact_survival(spec, j, t))}));
}

void cmd_oracle_wpmf(const common_options& opt, int j, int t) {
  const auto spec = resolve_spec(opt);
  const auto law = exact_tuple_count_pmf(spec, j, t);
  output_target out(opt.out);
  out.line("k,prob");
  for (std::size_t i = 0; i < law.support.size(); ++i) {
    out.line(join({std::to_string(law.support[i]), fmt(law.probs[i])}));
  }
}

void cmd_oracle_tv(const common_options& opt, int j, int t, double lambda,
                   int k_max) {
  const auto spec = resolve_spec(opt);
  const auto law = exact_tuple_count_pmf(spec, j, t);
  if (lambda < 0.0) lambda = lambda_stat(spec, j, t);
  if (k_max < 0) k_max = static_cast<int>(law.support.back()) + 40;
  const double tv = tv_distance(law, poisson_pmf(lambda, k_max));
  output_target out(opt.out);
  out.line("deck,j,t,lambda,k_max,tv");
  out.line(join({describe(spec), std::to_string(j), std::to_string(t),
                 fmt(lambda), std::to_string(k_max), fmt(tv)}));
}

void cmd_oracle_coupling(const common_options& opt,
                         const std::string& positions_text) {
  const auto spec = resolve_spec(opt);
  const auto positions = parse_int_list(positions_text, "--s");
  const auto laws = exact_coupling_laws(spec, positions);
  const auto tv = tv_distance(laws);
  std::vector<std::string> pos_names;
  for (int p : positions) pos_names.push_back(std::to_string(p));
  output_target out(opt.out);
  out.line("deck,positions,outcomes,tv");
  out.line(join({describe(spec), join(pos_names, ';'),
                 std::to_string(laws.coupled.size()), fmt(tv.to_double())}));
}

// ---------------------------------------------------------------------------
// figure data

void cmd_figure(const common_options& opt, int id) {
  output_target out(opt.out);
  const auto simulate_cell = [&](const deck_spec& spec, strategy mode) {
    return run_score_trials(spec, mode, opt.trials, opt.seed, opt.threads);
  };

  if (id == 1 || id == 2) {
    const bool with_leading = id == 2;
    std::string header =
        "figure,mode,m,n,trials,seed,mean,stderr,approx,relative_error";
    if (with_leading) header += ",approx_leading";
    out.line(header);
    const auto m_values = with_leading ? std::vector<int>{4, 5, 6}
                                       : std::vector<int>{2, 3, 4, 5, 6};
    for (int m : m_values) {
      for (int n = 2; n <= 100; ++n) {
        const auto spec = even_spec(m, n);
        const auto summary = simulate_cell(spec, strategy::best);
        const double approx = approx_best(spec).value;
        std::vector<std::string> row{
            std::to_string(id),       "best",
            std::to_string(m),        std::to_string(n),
            std::to_string(opt.trials), std::to_string(opt.seed),
            fmt(summary.mean),        fmt(summary.std_error),
            fmt(approx),              fmt((summary.mean - approx) / summary.mean)};
        if (with_leading) {
          row.push_back(fmt(harmonic(m) * std::log(static_cast<double>(n))));
        }
        out.line(join(row));
      }
    }
    return;
  }

  if (id == 3) {
    out.line("figure,m1,m2,n,trials,seed,mean,stderr,approx,relative_error");
    const std::vector<int> mult_choices{6, 8, 10, 12};
    for (std::size_t a = 0; a < mult_choices.size(); ++a) {
      for (std::size_t b = a; b < mult_choices.size(); ++b) {
        for (int n = 2; n <= 100; n += 2) {
          std::vector<int> mults(static_cast<std::size_t>(n), mult_choices[a]);
          for (int i = n / 2; i < n; ++i) {
            mults[static_cast<std::size_t>(i)] = mult_choices[b];
          }
          const auto spec = make_spec(mults);
          const auto summary = simulate_cell(spec, strategy::best);
          const double approx = approx_best(spec).value;
          out.line(join({std::to_string(id), std::to_string(mult_choices[a]),
                         std::to_string(mult_choices[b]), std::to_string(n),
                         std::to_string(opt.trials), std::to_string(opt.seed),
                         fmt(summary.mean), fmt(summary.std_error), fmt(approx),
                         fmt((summary.mean - approx) / summary.mean)}));
        }
      }
    }
    return;
  }

  if (id == 4 || id == 5) {
    const bool with_all_terms = id == 5;
    std::string header =
        "figure,mode,m,n,trials,seed,mean,stderr,approx,relative_error";
    if (with_all_terms) header += ",approx_all_terms";
    out.line(header);
    const auto m_values = with_all_terms ? std::vector<int>{4, 5, 6}
                                         : std::vector<int>{2, 3, 4, 5, 6};
    for (int m : m_values) {
      for (int n = 10; n <= 1000; n += 10) {
        const auto spec = even_spec(m, n);
        const auto summary = simulate_cell(spec, strategy::worst);
        const double approx = approx_worst(spec).value;
        std::vector<std::string> row{
            std::to_string(id),       "worst",
            std::to_string(m),        std::to_string(n),
            std::to_string(opt.trials), std::to_string(opt.seed),
            fmt(summary.mean),        fmt(summary.std_error),
            fmt(approx),              fmt((summary.mean - approx) / summary.mean)};
        if (with_all_terms) row.push_back(fmt(approx_worst(spec, true).value));
        out.line(join(row));
      }
    }
    return;
  }

  throw std::invalid_argument("figure id must be 1..5");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Greedy card-guessing scores and collision times for decks sampled "
      "without replacement"};
  app.require_subcommand(1);

  common_options opt;
  std::string mode_name = "best";
  bool all_terms = false;
  int j = 1;
  int t = 0;
  int t_max = -1;
  int t_step = 1;
  double lambda = -1.0;
  int k_max = -1;
  int figure_id = 1;
  std::string grid_text;
  std::string times_text;
  std::string positions_text;
  std::string orientation = "bottom-up";

  auto* approx = app.add_subcommand("approx", "closed-form approximations");
  approx->add_option("--mode", mode_name, "best or worst")->required();
  approx->add_flag("--all-terms", all_terms,
                   "extend the worst-strategy sum down to j = 1");
  add_deck_flags(approx, opt);
  add_out_flag(approx, opt);
  approx->callback([&] { cmd_approx(opt, mode_name, all_terms); });

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo score trials");
  simulate->add_option("--mode", mode_name, "best or worst")->required();
  add_deck_flags(simulate, opt);
  add_run_flags(simulate, opt);
  add_out_flag(simulate, opt);
  simulate->callback([&] { cmd_simulate(opt, mode_name); });

  auto* table1 = app.add_subcommand(
      "table1", "worst-strategy approximation vs simulation at large n");
  add_run_flags(table1, opt);
  add_out_flag(table1, opt);
  table1->callback([&] { cmd_table1(opt); });

  auto* birthday = app.add_subcommand(
      "birthday", "survival curve of the record time T_j vs e^{-lambda}");
  birthday->add_option("--j", j, "record index")->default_val(1);
  birthday->add_option("--t-grid", grid_text, "comma-separated times");
  birthday->add_option("--t-max", t_max, "dense grid 0..t-max");
  birthday->add_option("--t-step", t_step, "dense grid stride")->default_val(1);
  birthday->add_option("--orientation", orientation,
                       "bottom-up (default) or top-down")
      ->check(CLI::IsMember({"bottom-up", "top-down"}));
  add_deck_flags(birthday, opt);
  add_run_flags(birthday, opt);
  add_out_flag(birthday, opt);
  birthday->callback(
      [&] { cmd_birthday(opt, j, grid_text, t_max, t_step, orientation); });

  auto* joint = app.add_subcommand(
      "joint", "joint survival of (T_1, ..., T_k) vs the product law");
  joint->add_option("--times", times_text, "t_1,...,t_k sorted")->required();
  add_deck_flags(joint, opt);
  add_run_flags(joint, opt);
  add_out_flag(joint, opt);
  joint->callback([&] { cmd_joint(opt, times_text); });

  auto* oracle = app.add_subcommand("oracle", "exact small-instance values");
  oracle->require_subcommand(1);

  auto* oracle_score = oracle->add_subcommand("score", "exact expected score");
  oracle_score->add_option("--mode", mode_name, "best or worst")->required();
  add_deck_flags(oracle_score, opt);
  add_out_flag(oracle_score, opt);
  oracle_score->callback([&] { cmd_oracle_score(opt, mode_name); });

  auto* oracle_survival =
      oracle->add_subcommand("survival", "exact P(T_j >= t)");
  oracle_survival->add_option("--j", j, "record index")->required();
  oracle_survival->add_option("--t", t, "time")->required();
  add_deck_flags(oracle_survival, opt);
  add_out_flag(oracle_survival, opt);
  oracle_survival->callback([&] { cmd_oracle_survival(opt, j, t); });

  auto* oracle_wpmf =
      oracle->add_subcommand("wpmf", "exact law of the tuple count W_j(t)");
  oracle_wpmf->add_option("--j", j, "record index")->required();
  oracle_wpmf->add_option("--t", t, "time")->required();
  add_deck_flags(oracle_wpmf, opt);
  add_out_flag(oracle_wpmf, opt);
  oracle_wpmf->callback([&] { cmd_oracle_wpmf(opt, j, t); });

  auto* oracle_tv = oracle->add_subcommand(
      "tv", "total variation of W_j(t) against a Poisson law");
  oracle_tv->add_option("--j", j, "record index")->required();
  oracle_tv->add_option("--t", t, "time")->required();
  oracle_tv->add_option("--lambda", lambda,
                        "Poisson mean (default: the lambda statistic)");
  oracle_tv->add_option("--kmax", k_max, "truncation point");
  add_deck_flags(oracle_tv, opt);
  add_out_flag(oracle_tv, opt);
  oracle_tv->callback([&] { cmd_oracle_tv(opt, j, t, lambda, k_max); });

  auto* oracle_coupling = oracle->add_subcommand(
      "coupling-check",
      "TV between the coupled-deck law and the conditional law");
  oracle_coupling->add_option("--s", positions_text,
                              "comma-separated 0-based positions")
      ->required();
  add_deck_flags(oracle_coupling, opt);
  add_out_flag(oracle_coupling, opt);
  oracle_coupling->callback([&] { cmd_oracle_coupling(opt, positions_text); });

  auto* figure =
      app.add_subcommand("figure", "data behind the survey figures");
  figure->add_option("--id", figure_id, "figure number 1..5")->required();
  add_run_flags(figure, opt);
  add_out_flag(figure, opt);
  figure->callback([&] { cmd_figure(opt, figure_id); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
