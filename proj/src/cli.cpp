#include "iadof/cli.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "iadof/alignment.hpp"
#include "iadof/dof_bounds.hpp"
#include "iadof/link_sim.hpp"
#include "iadof/serialize.hpp"

namespace iadof::cli {

namespace {

struct GlobalOptions {
  bool json = false;
  std::string out_file;
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultEnumerationBudget;
};

struct ChannelShape {
  int users = 3;
  int tx = 1;
  int rx = 1;
  int gamma = 1;
};

void add_shape_options(CLI::App* cmd, ChannelShape& shape) {
  cmd->add_option("-K,--users", shape.users, "number of users")
      ->check(CLI::Range(1, kMaxDimension));
  cmd->add_option("-M,--tx", shape.tx, "transmit antennas per user")
      ->check(CLI::Range(1, kMaxDimension));
  cmd->add_option("-N,--rx", shape.rx, "receive antennas per user")
      ->check(CLI::Range(1, kMaxDimension));
  cmd->add_option("--gamma", shape.gamma, "direction exponent range")
      ->check(CLI::Range(1, 1'000'000));
}

int emit(const GlobalOptions& g, const std::string& text, std::ostream& out,
         std::ostream& err) {
  if (g.out_file.empty()) {
    out << text;
    return out ? kSuccess : kIoError;
  }
  std::ofstream file(g.out_file, std::ios::binary);
  if (!file) {
    err << "error: cannot open " << g.out_file << " for writing\n";
    return kIoError;
  }
  file << text;
  file.flush();
  if (!file) {
    err << "error: failed writing " << g.out_file << "\n";
    return kIoError;
  }
  return kSuccess;
}

std::string render_bounds(const DofReport& r) {
  std::ostringstream s;
  const auto& w = r.upper.witness;
  s << "M=" << r.tx_antennas << " N=" << r.rx_antennas << " K=" << r.users
    << "\n";
  s << "regime: " << to_string(r.regime) << "\n";
  s << "achievable total: " << to_string(r.achievable) << " ("
    << to_decimal(r.achievable) << ")  per user: "
    << to_string(r.achievable_per_user()) << "\n";
  s << "upper total: " << to_string(r.upper.value) << " ("
    << to_decimal(r.upper.value) << ")  per user: "
    << to_string(r.upper_per_user()) << "\n";
  s << "witness: sign=" << to_string(w.sign)
    << " mu=" << (w.mu ? std::to_string(*w.mu) : std::string("-"))
    << " L_min=" << w.l_min << " L_max=" << w.l_max << "\n";
  s << "prior bounds: achievable " << to_string(r.reference.achievable)
    << "  upper " << to_string(r.reference.upper) << "\n";
  return s.str();
}

std::string render_alignment(const AlignmentReport& r) {
  std::ostringstream s;
  auto yes = [](bool b) { return b ? "yes" : "no"; };
  s << "K=" << r.config.users << " M=" << r.config.tx_antennas
    << " N=" << r.config.rx_antennas << " gamma=" << r.config.gamma;
  if (r.truncation_cap) s << " cap=" << *r.truncation_cap;
  s << "\n";
  s << "closed form: L=" << r.closed_form.per_stream.str()
    << " L'=" << r.closed_form.interference.str() << "\n";
  for (const auto& a : r.per_antenna) {
    s << "user " << a.user << " antenna " << a.rx_ant
      << ": L=" << a.stream_count_observed << " desired=" << a.desired_count
      << " L'=" << a.interference_count << " distinct=" << a.distinct_count
      << " | pairwise_disjoint=" << yes(a.desired_pairwise_disjoint)
      << " disjoint_from_interference="
      << yes(a.desired_disjoint_from_interference)
      << " within_reference=" << yes(a.interference_within_reference)
      << " within_closed_form=" << yes(a.interference_within_closed_form);
    if (a.stream_count_matches)
      s << " count_matches=" << yes(*a.stream_count_matches);
    s << "\n";
  }
  s << "result: " << (r.pass ? "PASS" : "FAIL") << "\n";
  return s.str();
}

// Cross-checks reference containment against explicitly enumerated sets.
bool strict_reference_check(const TransmitPlan& plan, std::uint64_t budget) {
  const auto& c = plan.config;
  ReferenceFamily family(c.users, c.tx_antennas, c.rx_antennas, c.gamma);
  DirectionSet reference;
  for (int n = 1; n <= c.rx_antennas; ++n)
    reference = set_union(reference, family.materialize(n, budget));
  for (int k = 1; k <= c.users; ++k)
    for (int n = 1; n <= c.rx_antennas; ++n)
      if (!is_subset(expand_received(plan, k, n).interference, reference))
        return false;
  return true;
}

int cmd_directions(const GlobalOptions& g, const ChannelShape& shape,
                   std::optional<std::size_t> cap, bool strict,
                   std::ostream& out, std::ostream& err) {
  SystemConfig config;
  config.users = shape.users;
  config.tx_antennas = shape.tx;
  config.rx_antennas = shape.rx;
  config.gamma = shape.gamma;
  config.seed = g.seed;

  TransmitPlan plan;
  try {
    plan = build_transmit_directions(config, g.budget);
  } catch (const EnumerationTooLarge& e) {
    std::ostringstream s;
    s << "enumeration budget exceeded (budget " << e.budget() << ")\n";
    s << "closed form: L=" << e.counts().per_stream.str()
      << " L'=" << e.counts().interference.str() << "\n";
    const int rc = emit(g, s.str(), out, err);
    return rc == kSuccess ? kBudgetExceeded : rc;
  }
  if (cap) plan = truncate_plan(plan, *cap);

  auto report = verify_alignment(plan);
  std::optional<bool> strict_ok;
  if (strict) {
    try {
      strict_ok = strict_reference_check(plan, g.budget);
    } catch (const EnumerationTooLarge& e) {
      err << "error: reference enumeration needs " << e.counts().per_stream.str()
          << " directions, budget is " << e.budget() << "\n";
      return kBudgetExceeded;
    }
  }
  const bool pass = report.pass && strict_ok.value_or(true);

  std::string text;
  if (g.json) {
    auto j = alignment_report_to_json(report);
    if (strict_ok) j["strict_reference_check"] = *strict_ok;
    j["pass"] = pass;
    text = j.dump(2) + "\n";
  } else {
    text = render_alignment(report);
    if (strict_ok)
      text += std::string("strict reference enumeration: ") +
              (*strict_ok ? "PASS" : "FAIL") + "\n";
  }
  const int rc = emit(g, text, out, err);
  if (rc != kSuccess) return rc;
  return pass ? kSuccess : kVerificationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Degrees-of-freedom bounds and monomial interference alignment "
               "for the K-user MIMO interference channel",
               "ia-dof"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_flag("--json", g.json, "emit JSON instead of text/CSV");
  app.add_option("--out", g.out_file, "write output to FILE");
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--budget", g.budget, "enumeration budget (directions per stream)")
      ->check(CLI::PositiveNumber);

  int bounds_m = 0, bounds_n = 0, bounds_k = 0;
  auto* bounds = app.add_subcommand("bounds", "DoF bounds for one (M, N, K)");
  bounds->add_option("-M,--tx", bounds_m, "transmit antennas")
      ->required()
      ->check(CLI::Range(1, 100000));
  bounds->add_option("-N,--rx", bounds_n, "receive antennas")
      ->required()
      ->check(CLI::Range(1, 100000));
  bounds->add_option("-K,--users", bounds_k, "users")
      ->required()
      ->check(CLI::Range(1, 100000));

  int sweep_m = 5, sweep_n = 2, k_min = 1, k_max = 20;
  auto* sweep = app.add_subcommand("sweep", "bounds over a range of K as CSV");
  sweep->add_option("-M,--tx", sweep_m, "transmit antennas")
      ->check(CLI::Range(1, 100000));
  sweep->add_option("-N,--rx", sweep_n, "receive antennas")
      ->check(CLI::Range(1, 100000));
  sweep->add_option("--k-min", k_min, "first K")->check(CLI::Range(1, 100000));
  sweep->add_option("--k-max", k_max, "last K")->check(CLI::Range(1, 100000));

  ChannelShape dir_shape;
  std::optional<std::size_t> dir_cap;
  auto* directions =
      app.add_subcommand("directions", "build and verify the direction sets");
  add_shape_options(directions, dir_shape);
  directions->add_option("--cap", dir_cap, "truncate every stream to CAP directions")
      ->check(CLI::PositiveNumber);

  ChannelShape ver_shape;
  std::optional<std::size_t> ver_cap;
  auto* verify = app.add_subcommand(
      "verify", "directions --strict: also enumerate the reference sets");
  add_shape_options(verify, ver_shape);
  verify->add_option("--cap", ver_cap, "truncate every stream to CAP directions")
      ->check(CLI::PositiveNumber);
  bool strict = false;
  directions->add_flag("--strict", strict, "enumerate the reference sets too");

  ChannelShape sim_shape;
  std::size_t sim_cap = 1;
  int sim_q = 2;
  int sim_trials = 1000;
  std::vector<double> snr{1e2, 1e4, 1e6};
  std::vector<int> slope_q;
  bool noiseless = false;
  std::uint64_t decode_budget = kDefaultDecodeBudget;
  std::string channel_out;
  auto* simulate = app.add_subcommand("simulate", "link-level simulation");
  add_shape_options(simulate, sim_shape);
  simulate->add_option("--cap", sim_cap, "directions kept per stream")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--q", sim_q, "symbols lie in (-Q, Q)")
      ->check(CLI::Range(2, 1 << 20));
  simulate->add_option("--snr", snr, "comma-separated SNR points (linear)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  simulate->add_option("--trials", sim_trials, "trials per SNR point")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--slope-q", slope_q,
                       "comma-separated Q values for the separation fit")
      ->delimiter(',');
  simulate->add_flag("--noiseless", noiseless,
                     "zero noise; fail unless every symbol decodes");
  simulate->add_option("--decode-budget", decode_budget,
                       "max constellation points per antenna")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--channel-out", channel_out,
                       "write the channel realization as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kUsage;
  }

  try {
    if (*bounds) {
      const auto report = dof_report(bounds_m, bounds_n, bounds_k);
      const auto text = g.json ? dof_report_to_json(report).dump(2) + "\n"
                               : render_bounds(report);
      return emit(g, text, out, err);
    }

    if (*sweep) {
      if (k_min > k_max) {
        err << "error: --k-min must not exceed --k-max\n" << sweep->help();
        return kUsage;
      }
      std::ostringstream s;
      if (g.json) {
        auto rows = nlohmann::json::array();
        for (int K = k_min; K <= k_max; ++K)
          rows.push_back(dof_report_to_json(dof_report(sweep_m, sweep_n, K)));
        s << rows.dump(2) << "\n";
      } else {
        write_sweep_csv(s, sweep_m, sweep_n, k_min, k_max);
      }
      return emit(g, s.str(), out, err);
    }

    if (*directions) return cmd_directions(g, dir_shape, dir_cap, strict, out, err);
    if (*verify) return cmd_directions(g, ver_shape, ver_cap, true, out, err);

    if (*simulate) {
      SystemConfig config;
      config.users = sim_shape.users;
      config.tx_antennas = sim_shape.tx;
      config.rx_antennas = sim_shape.rx;
      config.gamma = sim_shape.gamma;
      config.symbol_range = sim_q;
      config.power = snr.empty() ? 1.0 : snr.back();
      config.seed = g.seed;

      SimConfig sim;
      sim.snr_points = snr;
      sim.trials = sim_trials;
      sim.noiseless = noiseless;
      sim.decode_budget = decode_budget;
      sim.enumeration_budget = g.budget;
      sim.separation_q = slope_q;

      SimResult result;
      try {
        result = run_link_sim(config, sim, sim_cap);
      } catch (const EnumerationTooLarge& e) {
        err << "error: " << e.what() << "\n";
        return kBudgetExceeded;
      } catch (const DecodeBudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kBudgetExceeded;
      }

      if (!channel_out.empty()) {
        std::ofstream file(channel_out, std::ios::binary);
        file << channel_to_json(generate_channel(config)).dump(2) << "\n";
        if (!file) {
          err << "error: cannot write " << channel_out << "\n";
          return kIoError;
        }
      }

      std::ostringstream s;
      if (g.json)
        s << sim_result_to_json(result).dump(2) << "\n";
      else
        write_ser_csv(s, result);
      const int rc = emit(g, s.str(), out, err);
      if (rc != kSuccess) return rc;
      if (noiseless)
        for (const auto& p : result.ser)
          if (p.symbol_errors != 0) {
            err << "error: noiseless decoding produced " << p.symbol_errors
                << " symbol errors at rho=" << format_double(p.rho) << "\n";
            return kVerificationFailed;
          }
      return kSuccess;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace iadof::cli
