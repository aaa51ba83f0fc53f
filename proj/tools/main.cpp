#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sckey/attacks.hpp"
#include "sckey/frames.hpp"
#include "sckey/info.hpp"
#include "sckey/io.hpp"
#include "sckey/rates.hpp"

namespace {

using namespace sckey;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // runtime or check failure
constexpr int kExitUsage = 2;    // bad flags / unknown names

std::string fmt(double v, int digits = 6) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::optional<Frame> frame_by_name(const std::string& name) {
  if (name == "trine") return make_trine();
  if (name == "bb84") return make_bb84();
  if (name.rfind("simplex:", 0) == 0) {
    int d = 0;
    try {
      d = std::stoi(name.substr(8));
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (d < 2) return std::nullopt;
    return make_simplex(d);
  }
  return std::nullopt;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << content;
  if (!os) throw std::runtime_error("write failed for " + path.string());
}

int cmd_frame_verify(const std::string& name) {
  const auto frame = frame_by_name(name);
  if (!frame) {
    std::cerr << "unknown frame '" << name
              << "' (expected trine, bb84, or simplex:d with d >= 2)\n";
    return kExitUsage;
  }
  const Index n = frame->size(), d = frame->dim();
  std::cout << "frame: " << frame->label() << " (n=" << n << ", d=" << d
            << "), states one per line as re,im:\n";
  write_frame(std::cout, *frame);

  const auto eq = is_equiangular(*frame, 1e-10);
  const double welch = static_cast<double>(n - d) / static_cast<double>(d * (n - 1));
  std::cout << "equiangular: " << (eq.equiangular ? "yes" : "no")
            << " (mean overlap^2 = " << fmt(eq.mean_overlap_sq, 12)
            << ", Welch value = " << fmt(welch, 12) << ")\n";

  const double v1 = frame_potential(*frame, 1);
  const double v2 = frame_potential(*frame, 2);
  const double v1_floor = static_cast<double>(n * n) / static_cast<double>(d);
  std::cout << "V_1 = " << fmt(v1, 12) << " (floor n^2/d = " << fmt(v1_floor, 12)
            << ")\nV_2 = " << fmt(v2, 12) << "\n";

  bool ok = std::abs(v1 - v1_floor) <= 1e-9;
  if (!ok) std::cout << "V_1 exceeds the n^2/d floor: no POVM\n";

  try {
    const Povm povm = povm_from_frame(*frame);
    CMatrix sum = CMatrix::Zero(d, d);
    for (Index k = 0; k < povm.size(); ++k) sum += povm.element(k);
    const double resid = (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    std::cout << "povm identity residual: " << fmt(resid, 3) << "\n";
    ok = ok && resid <= 1e-12;

    const BipartiteState ent = entangled_realization(*frame);
    const CMatrix target = CMatrix::Identity(d, d) / static_cast<double>(d);
    const double r_ent = std::max((ent.reduced_a() - target).cwiseAbs().maxCoeff(),
                                  (ent.reduced_b() - target).cwiseAbs().maxCoeff());
    std::cout << "entangled-realization reduced-state residual: " << fmt(r_ent, 3) << "\n";
    ok = ok && r_ent <= 1e-10;
  } catch (const std::exception& e) {
    std::cout << "povm construction failed: " << e.what() << "\n";
    ok = false;
  }

  std::cout << (ok ? "all checks passed\n" : "CHECKS FAILED\n");
  return ok ? kExitOk : kExitFailure;
}

struct AttackFlags {
  std::string protocol = "trine";
  std::string attack = "intercept-resend";
  std::string cloner = "paper";
  AnnealConfig anneal;
};

void add_attack_flags(CLI::App* cmd, AttackFlags& f, bool with_attack = true) {
  cmd->add_option("--protocol", f.protocol, "protocol: trine or bb84")
      ->check(CLI::IsMember({"trine", "bb84"}));
  if (with_attack)
    cmd->add_option("--attack", f.attack, "attack: intercept-resend or clone")
        ->check(CLI::IsMember({"intercept-resend", "clone"}));
  cmd->add_option("--cloner", f.cloner,
                  "cloner for the clone attack: paper (built-in reference) or optimize")
      ->check(CLI::IsMember({"paper", "optimize"}));
  cmd->add_option("--seed", f.anneal.seed, "annealer RNG seed");
  cmd->add_option("--steps", f.anneal.steps, "annealing steps per restart")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--restarts", f.anneal.restarts, "independent annealer restarts")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--temp", f.anneal.temp_initial, "initial annealing temperature")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--cooling", f.anneal.cooling, "geometric cooling factor in (0,1)");
  cmd->add_option("--step-scale", f.anneal.step_scale, "proposal scale (times temperature)");
  cmd->add_option("--penalty", f.anneal.penalty_weight, "symmetry penalty weight");
}

Protocol parse_protocol(const std::string& s) {
  return s == "trine" ? Protocol::Trine : Protocol::Bb84;
}

Attack parse_attack(const std::string& s) {
  return s == "clone" ? Attack::Clone : Attack::InterceptResend;
}

// Resolve the cloner named on the command line; nullopt for intercept-resend.
std::optional<CloneUnitary> resolve_cli_cloner(const AttackFlags& f) {
  if (parse_attack(f.attack) != Attack::Clone) return std::nullopt;
  if (f.cloner == "paper") {
    if (parse_protocol(f.protocol) != Protocol::Trine)
      throw CLI::ValidationError(
          "--cloner", "the built-in reference cloner is trine-specific; use "
                      "--cloner optimize for bb84");
    return reference_trine_cloner();
  }
  const Frame signal = parse_protocol(f.protocol) == Protocol::Trine ? make_trine() : make_bb84();
  return optimize_cloner(signal, f.anneal).unitary;
}

int cmd_dump_dist(const AttackFlags& f, double q, const std::string& out) {
  const auto builder =
      make_joint_builder(parse_protocol(f.protocol), parse_attack(f.attack), resolve_cli_cloner(f));
  std::ostringstream ss;
  write_joint_csv(ss, builder(q));
  if (out == "-") {
    std::cout << ss.str();
  } else {
    write_file(out, ss.str());
    std::cout << "wrote " << out << "\n";
  }
  return kExitOk;
}

void print_threshold(const char* label, const std::optional<double>& e) {
  if (e)
    std::cout << label << " tolerable error: " << fmt(*e) << "\n";
  else
    std::cout << label << " bound: no zero crossing\n";
}

int cmd_rates(const AttackFlags& f, int q_points, const std::string& out) {
  const Protocol protocol = parse_protocol(f.protocol);
  const Attack attack = parse_attack(f.attack);
  const auto builder = make_joint_builder(protocol, attack, resolve_cli_cloner(f));
  const auto points = sweep(builder, protocol, uniform_q_grid(q_points));

  std::ostringstream ss;
  write_sweep_csv(ss, protocol, attack, points);
  write_file(out, ss.str());
  std::cout << "wrote " << out << " (" << points.size() << " points)\n";
  print_threshold("lower", tolerable_error(builder, protocol, Bound::Lower, 1e-6));
  print_threshold("upper", tolerable_error(builder, protocol, Bound::Upper, 1e-6));
  return kExitOk;
}

int cmd_clone_opt(const AttackFlags& f, const std::string& out) {
  const Protocol protocol = parse_protocol(f.protocol);
  const Frame signal = protocol == Protocol::Trine ? make_trine() : make_bb84();
  std::cout << "optimizing symmetric cloner for " << f.protocol << " (seed "
            << f.anneal.seed << ", " << f.anneal.steps << " steps x "
            << f.anneal.restarts << " restarts)\n";
  const CloneOptResult result = optimize_cloner(signal, f.anneal);

  std::cout << "fidelity (two-copy overlap objective): " << fmt(result.fidelity, 12) << "\n"
            << "symmetry penalty (overlap variance):   " << fmt(result.penalty, 3) << "\n"
            << "single-clone fidelity:                 "
            << fmt(single_clone_fidelity(result.unitary, signal), 12) << "\n";
  if (protocol == Protocol::Trine) {
    const double ref = average_clone_fidelity(reference_trine_cloner(), signal);
    std::cout << "reference cloner objective:            " << fmt(ref, 12)
              << " (difference " << fmt(result.fidelity - ref, 3) << ")\n";
  }

  std::ostringstream ss;
  write_matrix(ss, result.unitary.matrix());
  write_file(out, ss.str());
  std::cout << "wrote cloner matrix to " << out << "\n";

  if (!result.symmetric) {
    std::cout << "RESULT NOT SYMMETRIC (penalty >= 1e-6)\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_fig1(const std::string& out_dir) {
  namespace fs = std::filesystem;
  const fs::path dir(out_dir);
  fs::create_directories(dir);

  const auto grid = uniform_q_grid(101);
  struct Curve {
    Protocol protocol;
    const char* file;
    std::optional<double> lower_threshold, upper_threshold;
  };
  Curve curves[] = {{Protocol::Trine, "trine_intercept_resend.csv", {}, {}},
                    {Protocol::Bb84, "bb84_intercept_resend.csv", {}, {}}};
  for (auto& c : curves) {
    const auto builder = make_joint_builder(c.protocol, Attack::InterceptResend);
    std::ostringstream ss;
    write_sweep_csv(ss, c.protocol, Attack::InterceptResend, sweep(builder, c.protocol, grid));
    write_file(dir / c.file, ss.str());
    std::cout << "wrote " << (dir / c.file).string() << "\n";
    c.lower_threshold = tolerable_error(builder, c.protocol, Bound::Lower, 1e-6);
    c.upper_threshold = tolerable_error(builder, c.protocol, Bound::Upper, 1e-6);
  }

  const std::string script =
      "# key rate bounds vs observed error rate, intercept-resend attack\n"
      "# run:  gnuplot fig1.gp   (from this directory)\n"
      "set datafile separator ','\n"
      "set key autotitle columnhead\n"
      "set key top right\n"
      "set xlabel 'error rate E'\n"
      "set ylabel 'key rate bound (bits per signal)'\n"
      "set xrange [0:0.18]\n"
      "set yrange [0:0.62]\n"
      "# uncomment for a png:\n"
      "# set terminal pngcairo size 800,600\n"
      "# set output 'fig1.png'\n"
      "plot 'trine_intercept_resend.csv' using 4:6 with lines lw 2 dashtype 1 "
      "lc rgb '#1f77b4' title 'trine upper', \\\n"
      "     'trine_intercept_resend.csv' using 4:5 with lines lw 2 dashtype 2 "
      "lc rgb '#1f77b4' title 'trine lower', \\\n"
      "     'bb84_intercept_resend.csv' using 4:6 with lines lw 2 dashtype 1 "
      "lc rgb '#d62728' title 'bb84 upper', \\\n"
      "     'bb84_intercept_resend.csv' using 4:5 with lines lw 2 dashtype 2 "
      "lc rgb '#d62728' title 'bb84 lower'\n";
  write_file(dir / "fig1.gp", script);
  std::cout << "wrote " << (dir / "fig1.gp").string() << "\n";

  for (const auto& c : curves) {
    std::cout << protocol_name(c.protocol) << ": lower-bound tolerable error "
              << (c.lower_threshold ? fmt(*c.lower_threshold) : "n/a")
              << ", upper-bound tolerable error "
              << (c.upper_threshold ? fmt(*c.upper_threshold) : "n/a") << "\n";
  }

  const auto report = compare(Protocol::Trine, Protocol::Bb84, Attack::InterceptResend, grid);
  if (report.lower_dominates && report.upper_dominates)
    std::cout << "verdict: trine >= bb84 on both bounds\n";
  else
    std::cout << "verdict: trine does NOT dominate bb84 (lower: "
              << (report.lower_dominates ? "yes" : "no") << ", upper: "
              << (report.upper_dominates ? "yes" : "no") << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eavesdropping statistics and key-rate bounds for spherical-code QKD"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("frame-verify", "construct a named frame and check it");
  std::string frame_name;
  verify->add_option("name", frame_name, "trine, bb84, or simplex:d")->required();

  auto* dump = app.add_subcommand("dump-dist", "dump a joint distribution as CSV");
  AttackFlags dump_flags;
  double dump_q = 1.0;
  std::string dump_out = "-";
  add_attack_flags(dump, dump_flags);
  dump->add_option("--q", dump_q, "interception fraction")->check(CLI::Range(0.0, 1.0));
  dump->add_option("--out", dump_out, "output path ('-' for stdout)");

  auto* rates = app.add_subcommand("rates", "sweep q and write the rate curve CSV");
  AttackFlags rates_flags;
  int q_points = 101;
  std::string rates_out = "rates.csv";
  add_attack_flags(rates, rates_flags);
  rates->add_option("--q-points", q_points, "number of uniform q grid points")
      ->check(CLI::PositiveNumber);
  rates->add_option("--out", rates_out, "output CSV path");

  auto* clone_opt = app.add_subcommand("clone-opt", "anneal a symmetric cloning unitary");
  AttackFlags clone_flags;
  std::string clone_out = "cloner.txt";
  add_attack_flags(clone_opt, clone_flags, /*with_attack=*/false);
  clone_opt->add_option("--out", clone_out, "output path for the unitary");

  auto* fig1 = app.add_subcommand("fig1", "reproduce the rate-vs-error comparison");
  std::string fig1_dir = ".";
  fig1->add_option("--out-dir", fig1_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(verify)) return cmd_frame_verify(frame_name);
    if (app.got_subcommand(dump)) return cmd_dump_dist(dump_flags, dump_q, dump_out);
    if (app.got_subcommand(rates)) return cmd_rates(rates_flags, q_points, rates_out);
    if (app.got_subcommand(clone_opt)) return cmd_clone_opt(clone_flags, clone_out);
    if (app.got_subcommand(fig1)) return cmd_fig1(fig1_dir);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
