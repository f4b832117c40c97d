#include "mzi/cli.hpp"

#include "mzi/duality.hpp"
#include "mzi/io.hpp"
#include "mzi/protocols.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <ostream>
#include <string>

namespace mzi {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

struct CommonOpts {
  double alpha = 0.0;
  double phi = 0.0;
  double e = 0.0;
  double beta = 0.0;
  bool degrees = false;
  std::string output; // empty = stdout
};

void add_angle_opts(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--alpha", o.alpha, "bias angle of the input family, radians in [0, pi/2]");
  sub->add_option("--phi", o.phi, "relative phase of the input family, radians in [0, pi]");
  sub->add_flag("--degrees", o.degrees, "interpret alpha/phi/beta in degrees");
}

void add_detector_opts(CLI::App* sub, CommonOpts& o) {
  auto* e_opt = sub->add_option("--E", o.e, "detector efficiency in [0, 1]");
  auto* b_opt = sub->add_option("--beta", o.beta, "Faraday angle, radians in [0, pi/2]");
  e_opt->excludes(b_opt);
  b_opt->excludes(e_opt);
}

void add_output_opt(CLI::App* sub, CommonOpts& o) {
  sub->add_option("-o,--output", o.output, "output file (default: stdout)");
}

double to_radians(double value, bool degrees) { return degrees ? value * kPi / 180.0 : value; }

// Resolves the common options after parsing: applies the degree conversion,
// range-checks, and turns exactly one of --E/--beta into a detector.
struct Resolved {
  double alpha = 0.0;
  double phi = 0.0;
  DetectorModel det;
};

Resolved resolve(const CLI::App* sub, CommonOpts& o) {
  Resolved r;
  r.alpha = to_radians(o.alpha, o.degrees);
  r.phi = to_radians(o.phi, o.degrees);
  if (r.alpha < 0.0 || r.alpha > kPi / 2 + 1e-12) {
    throw std::invalid_argument("--alpha must lie in [0, pi/2]");
  }
  if (r.phi < 0.0 || r.phi > kPi + 1e-12) {
    throw std::invalid_argument("--phi must lie in [0, pi]");
  }

  const bool have_e = sub->count("--E") > 0;
  const bool have_beta = sub->count("--beta") > 0;
  if (have_e == have_beta) {
    throw std::invalid_argument("exactly one of --E or --beta is required");
  }
  if (have_beta) {
    const double beta = to_radians(o.beta, o.degrees);
    if (beta < 0.0 || beta > kPi / 2 + 1e-12) {
      throw std::invalid_argument("--beta must lie in [0, pi/2]");
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    r.det = build_detector(beta, Vec2{{cx{inv_sqrt2, 0.0}, cx{inv_sqrt2, 0.0}}});
  } else {
    if (o.e < 0.0 || o.e > 1.0) {
      throw std::invalid_argument("--E must lie in [0, 1]");
    }
    r.det = detector_from_efficiency(o.e);
  }
  return r;
}

std::uint64_t resolve_seed(const CLI::App* sub, std::uint64_t flag_seed) {
  if (sub->count("--seed") > 0) return flag_seed;
  if (const char* env = std::getenv("SIM_SEED")) {
    std::uint64_t v = 0;
    const std::string s(env);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      throw std::invalid_argument("SIM_SEED is not a valid unsigned 64-bit integer");
    }
    return v;
  }
  return 0;
}

void emit(const std::string& content, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

ordered_json detector_json(const Resolved& r) {
  return ordered_json{{"alpha", r.alpha},
                      {"phi", r.phi},
                      {"beta", r.det.beta},
                      {"efficiency", r.det.efficiency}};
}

ordered_json estimate_json(const std::optional<Estimate>& est) {
  if (!est) return nullptr;
  return ordered_json{{"p_hat", est->p_hat},
                      {"std_err", est->std_err},
                      {"n", est->n},
                      {"successes", est->successes}};
}

int run_report(const CLI::App* sub, CommonOpts& o, int grid, std::ostream& out) {
  const Resolved r = resolve(sub, o);
  const PathState state = make_input_state(InputLabel{+1, +1, r.alpha, r.phi});
  const PredictiveReport pre = predictive_report(state, r.det, grid);
  const RetrodictiveReport retro = retrodictive_probabilities(r.alpha, r.phi, r.det.efficiency);

  ordered_json j;
  j["config"] = detector_json(r);
  j["config"]["b_ww"] = 1;
  j["config"]["b_wp"] = 1;
  j["config"]["grid"] = grid;
  j["predictive"] = ordered_json{{"predictability", pre.p},
                                 {"visibility", pre.v},
                                 {"efficiency", pre.e},
                                 {"distinguishability", pre.d},
                                 {"p_ww", pre.p_ww},
                                 {"p_wp", pre.p_wp},
                                 {"duality_lhs", pre.lhs}};
  ordered_json jr{{"d_ww", retro.d_ww},
                  {"d_wp", retro.d_wp},
                  {"efficiency", retro.e},
                  {"p_ww", retro.p_ww},
                  {"p_wp", retro.p_wp}};
  jr["ellipse_ww_term"] = retro.ellipse_ww_term ? ordered_json(*retro.ellipse_ww_term) : nullptr;
  jr["ellipse_wp_term"] = retro.ellipse_wp_term ? ordered_json(*retro.ellipse_wp_term) : nullptr;
  jr["ellipse_lhs"] = retro.ellipse_lhs ? ordered_json(*retro.ellipse_lhs) : nullptr;
  j["retrodictive"] = jr;

  emit(j.dump(2) + "\n", o.output, out);
  return 0;
}

int run_fringe(const CLI::App* sub, CommonOpts& o, int grid, std::ostream& out) {
  if (grid < 64) throw std::invalid_argument("--grid must be at least 64");
  const Resolved r = resolve(sub, o);
  const PathState state = make_input_state(InputLabel{+1, +1, r.alpha, r.phi});

  std::vector<FringePoint> points;
  points.reserve(static_cast<std::size_t>(grid));
  for (int k = 0; k < grid; ++k) {
    const double phase = 2.0 * kPi * k / grid;
    points.push_back(FringePoint{phase, port_plus_probability(evolve(state, r.det, phase))});
  }
  emit(fringe_csv(points), o.output, out);
  return 0;
}

int run_frontier(const CLI::App* sub, CommonOpts& o, int points, const std::string& format,
                 std::ostream& out) {
  if (points < 2) throw std::invalid_argument("--points must be at least 2");
  // frontier is detector-independent; ignore --E/--beta entirely
  const double alpha = to_radians(o.alpha, o.degrees);
  const double phi = to_radians(o.phi, o.degrees);
  (void)sub;

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) grid.push_back(static_cast<double>(k) / (points - 1));
  const auto frontier = frontier_sweep(alpha, phi, grid);

  if (format == "csv") {
    emit(frontier_csv(frontier), o.output, out);
  } else if (format == "json") {
    ordered_json j;
    j["config"] = ordered_json{{"alpha", alpha}, {"phi", phi}, {"points", points}};
    j["points"] = ordered_json::array();
    for (const auto& pt : frontier) {
      j["points"].push_back(
          ordered_json{{"efficiency", pt.e}, {"p_ww", pt.p_ww}, {"p_wp", pt.p_wp}});
    }
    emit(j.dump(2) + "\n", o.output, out);
  } else {
    throw std::invalid_argument("--format must be csv or json");
  }
  return 0;
}

int run_game(const CLI::App* sub, CommonOpts& o, const std::string& protocol, std::int64_t n,
             std::uint64_t flag_seed, bool averaged, bool serial, const std::string& trials_out,
             std::ostream& out) {
  const Resolved r = resolve(sub, o);
  const std::uint64_t seed = resolve_seed(sub, flag_seed);
  const ExecPolicy policy{!serial};

  std::vector<TrialRecord> records;
  std::vector<TrialRecord>* rec_ptr = trials_out.empty() ? nullptr : &records;

  GameStats stats;
  if (protocol == "retrodictive") {
    stats = run_retrodictive(r.alpha, r.phi, r.det.efficiency, n, seed, policy, rec_ptr);
  } else if (protocol == "alternative") {
    stats = run_alternative(r.det.efficiency, n, seed, averaged, policy, rec_ptr);
  } else if (protocol == "predictive_ww" || protocol == "predictive_wp") {
    const PathState state = make_input_state(InputLabel{+1, +1, r.alpha, r.phi});
    const PredictiveMode mode =
        protocol == "predictive_ww" ? PredictiveMode::ww : PredictiveMode::wp;
    stats = run_predictive(state, r.det, mode, n, seed, policy, rec_ptr);
  } else {
    throw std::invalid_argument("unknown protocol: " + protocol);
  }

  ordered_json j;
  j["config"] = detector_json(r);
  j["config"]["protocol"] = protocol;
  j["config"]["n"] = static_cast<std::uint64_t>(n);
  j["config"]["seed"] = seed;
  j["config"]["averaged"] = averaged;
  j["config"]["execution"] = serial ? "serial" : "parallel";
  j["estimates"] = ordered_json{{"ww", estimate_json(stats.ww)}, {"wp", estimate_json(stats.wp)}};

  if (rec_ptr) {
    write_file_atomic(trials_out, trials_csv(records));
  }
  emit(j.dump(2) + "\n", o.output, out);
  return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mach-Zehnder single-photon complementarity simulator"};
  app.require_subcommand(1);

  CommonOpts report_opts, fringe_opts, frontier_opts, game_opts;
  int report_grid = 720;
  int fringe_grid = 720;
  int frontier_points = 101;
  std::string frontier_format = "csv";
  std::string game_protocol;
  std::int64_t game_n = 100000;
  std::uint64_t game_seed = 0;
  bool game_averaged = false;
  bool game_serial = false;
  std::string game_trials_out;

  CLI::App* report = app.add_subcommand(
      "report", "closed-form predictive and retrodictive complementarity report (JSON)");
  add_angle_opts(report, report_opts);
  add_detector_opts(report, report_opts);
  add_output_opt(report, report_opts);
  report->add_option("--grid", report_grid, "fringe-scan grid for the visibility (>= 64)");

  CLI::App* fringe =
      app.add_subcommand("fringe", "port-+ probability versus phase knob (CSV)");
  add_angle_opts(fringe, fringe_opts);
  add_detector_opts(fringe, fringe_opts);
  add_output_opt(fringe, fringe_opts);
  fringe->add_option("--grid", fringe_grid, "number of phase samples (>= 64)");

  CLI::App* frontier = app.add_subcommand(
      "frontier", "optimal (P_WW, P_WP) pairs as the efficiency is swept");
  add_angle_opts(frontier, frontier_opts);
  add_output_opt(frontier, frontier_opts);
  frontier->add_option("--points", frontier_points, "efficiency grid size (>= 2)");
  frontier->add_option("--format", frontier_format, "csv or json (default csv)");

  CLI::App* game = app.add_subcommand("game", "seeded Monte Carlo guessing game");
  game->add_option("protocol", game_protocol,
                   "predictive_ww | predictive_wp | retrodictive | alternative")
      ->required();
  add_angle_opts(game, game_opts);
  add_detector_opts(game, game_opts);
  add_output_opt(game, game_opts);
  game->add_option("--n", game_n, "number of trials (>= 1)");
  game->add_option("--seed", game_seed, "RNG seed (SIM_SEED env is the fallback)");
  game->add_flag("--averaged", game_averaged, "alternative game: force both guesses every run");
  game->add_flag("--serial", game_serial, "use the serial reference engine");
  game->add_option("--trials-out", game_trials_out, "write per-trial CSV to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (report->parsed()) return run_report(report, report_opts, report_grid, out);
    if (fringe->parsed()) return run_fringe(fringe, fringe_opts, fringe_grid, out);
    if (frontier->parsed())
      return run_frontier(frontier, frontier_opts, frontier_points, frontier_format, out);
    if (game->parsed()) {
      if (game_n < 1) throw std::invalid_argument("--n must be at least 1");
      return run_game(game, game_opts, game_protocol, game_n, game_seed, game_averaged,
                      game_serial, game_trials_out, out);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

} // namespace mzi
