// qswitch: discrimination tables, verification suites, seeded simulation,
// event-ordering ledgers and LOCC bounds for the qudit d-switch.
//
// Exit codes: 0 success / all checks pass, 1 verification failure, 2 usage error.

#include <charconv>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qswitch/report.hpp"

namespace {

namespace rpt = qswitch::report;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct DimRange {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

DimRange parse_dim_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw rpt::UsageError("--dim-range expects LO..HI, got '" + s + "'");
  auto parse = [&s](std::string_view part) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty())
      throw rpt::UsageError("--dim-range expects LO..HI, got '" + s + "'");
    return v;
  };
  const std::string_view view(s);
  return {parse(view.substr(0, dots)), parse(view.substr(dots + 2))};
}

std::vector<double> parse_schmidt(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw rpt::UsageError("--schmidt expects comma-separated reals, got '" + s + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qudit d-switch Bell-state analyzer"};
  app.require_subcommand(1);

  std::string format = "text";
  std::optional<std::size_t> max_dim_override;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--max-dim-override", max_dim_override, "Raise the dimension cap (dense operators grow as d^6)");

  std::size_t dim = 3, i = 0, j = 0, shots = 1000, rounds = 2;
  std::uint64_t seed = 1;
  double tol = qswitch::kTolState;
  std::string dim_range = "2..12";
  std::size_t d1 = 0, d2 = 0;
  std::string schmidt;
  bool maximal = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--max-dim-override", max_dim_override, "Raise the dimension cap");
  };

  auto* table = app.add_subcommand("table", "Discrimination table for every Bell state of dimension d");
  table->add_option("--dim", dim, "Qudit dimension")->capture_default_str();
  add_common(table);

  auto* verify = app.add_subcommand("verify", "Run the verification suites over a range of dimensions");
  verify->add_option("--dim-range", dim_range, "Dimensions LO..HI")->capture_default_str();
  verify->add_option("--tol", tol, "Entrywise state tolerance")->capture_default_str();
  add_common(verify);

  auto* simulate = app.add_subcommand("simulate", "Seeded Born-rule simulation of the analyzer");
  simulate->add_option("--dim", dim, "Qudit dimension")->capture_default_str();
  simulate->add_option("--i", i, "Phase index of the input Bell state")->capture_default_str();
  simulate->add_option("--j", j, "Shift index of the input Bell state")->capture_default_str();
  simulate->add_option("--shots", shots, "Number of shots")->capture_default_str();
  simulate->add_option("--seed", seed, "RNG seed (mt19937_64)")->capture_default_str();
  add_common(simulate);

  auto* iterate = app.add_subcommand("iterate", "Apply the switch repeatedly with a refreshed control");
  iterate->add_option("--dim", dim, "Qudit dimension")->capture_default_str();
  iterate->add_option("--i", i, "Phase index")->capture_default_str();
  iterate->add_option("--j", j, "Shift index")->capture_default_str();
  iterate->add_option("--rounds", rounds, "Number of rounds")->capture_default_str();
  iterate->add_option("--tol", tol, "Fidelity tolerance")->capture_default_str();
  add_common(iterate);

  auto* gravity = app.add_subcommand("gravity", "Event-ordering composition ledger");
  gravity->add_option("--dim", dim, "Qudit dimension")->capture_default_str();
  add_common(gravity);

  auto* bound = app.add_subcommand("bound", "LOCC upper bound on distinguishable states");
  bound->add_option("--dim", dim, "Shorthand for --d1 = --d2 = dim");
  bound->add_option("--d1", d1, "Dimension of subsystem 1");
  bound->add_option("--d2", d2, "Dimension of subsystem 2");
  auto* schmidt_opt = bound->add_option("--schmidt", schmidt, "Comma-separated Schmidt coefficients");
  auto* maximal_opt = bound->add_flag("--maximal", maximal, "Maximally entangled spectrum");
  schmidt_opt->excludes(maximal_opt);
  add_common(bound);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const auto fmt = rpt::parse_format(format);
    auto cap = [&](std::size_t default_cap) {
      if (!max_dim_override) return default_cap;
      std::cerr << "warning: dimension cap raised to " << *max_dim_override
                << "; dense operators need O(d^6) memory\n";
      return std::max(default_cap, *max_dim_override);
    };

    rpt::ReportDocument doc;
    bool check_pass = false;
    if (*table) {
      doc = rpt::cmd_table(dim, cap(rpt::kBranchwiseDimCap));
    } else if (*verify) {
      const auto range = parse_dim_range(dim_range);
      doc = rpt::cmd_verify(range.lo, range.hi, tol, cap(rpt::kVerifyDimCap));
      check_pass = true;
    } else if (*simulate) {
      doc = rpt::cmd_simulate(dim, i, j, shots, seed, cap(rpt::kBranchwiseDimCap));
    } else if (*iterate) {
      doc = rpt::cmd_iterate(dim, i, j, rounds, tol, cap(rpt::kBranchwiseDimCap));
      check_pass = true;
    } else if (*gravity) {
      doc = rpt::cmd_gravity(dim, cap(rpt::kBranchwiseDimCap));
      check_pass = true;
    } else if (*bound) {
      const bool has_dim = bound->count("--dim") > 0;
      if (has_dim && (bound->count("--d1") || bound->count("--d2")))
        throw rpt::UsageError("use either --dim or --d1/--d2");
      if (has_dim) d1 = d2 = dim;
      if (d1 == 0 || d2 == 0) throw rpt::UsageError("bound needs --dim or both --d1 and --d2");
      if (!maximal && schmidt.empty()) throw rpt::UsageError("bound needs --schmidt or --maximal");
      doc = rpt::cmd_bound(d1, d2, maximal ? std::vector<double>{} : parse_schmidt(schmidt), maximal);
    }

    std::cout << doc.render(fmt);
    if (check_pass && doc.pass && !*doc.pass) return kExitFail;
    return kExitOk;
  } catch (const rpt::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
