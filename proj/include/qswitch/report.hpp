#pragma once

// Command implementations behind the qswitch CLI. Each command returns a
// ReportDocument that renders to JSON, CSV or plain text. Rendering is
// deterministic: JSON keys keep insertion order and reals print as
// shortest round-trip (JSON) or 17 significant digits (text, CSV).

#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qswitch/bounds.hpp"
#include "qswitch/bsa.hpp"
#include "qswitch/gravity.hpp"
#include "qswitch/ico_switch.hpp"
#include "qswitch/schmidt.hpp"
#include "qswitch/states.hpp"

namespace qswitch::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";
/// Default caps: branchwise commands and dense verification.
inline constexpr std::size_t kBranchwiseDimCap = 16;
inline constexpr std::size_t kVerifyDimCap = kDenseDimCap;

enum class Format { text, json, csv };

inline Format parse_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw std::invalid_argument("unknown format '" + s + "' (expected text, json or csv)");
}

/// Raised for invalid command arguments; the CLI maps it to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ReportDocument {
  std::string command;
  Json parameters = Json::object();
  Json results = Json::object();
  std::optional<bool> pass;
  std::string text;  // human-readable body
  std::string csv;   // header + rows

  Json to_json() const {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["parameters"] = parameters;
    j["results"] = results;
    j["pass"] = pass ? Json(*pass) : Json(nullptr);
    return j;
  }

  std::string render(Format f) const {
    switch (f) {
      case Format::json:
        return to_json().dump(2) + "\n";
      case Format::csv:
        return csv;
      case Format::text:
        break;
    }
    return text;
  }
};

inline std::string fmt_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void check_dim(std::size_t d, std::size_t cap) {
  if (d < 2) throw UsageError("dimension must be >= 2");
  if (d > cap)
    throw UsageError("dimension " + std::to_string(d) + " exceeds cap " + std::to_string(cap) +
                     " (raise with --max-dim-override)");
}

/// Control label D_l, with the F_l (d=3) and H_l (d=4) aliases.
inline std::string control_label(std::size_t /*d*/, std::size_t l) { return "D_" + std::to_string(l); }
inline std::string control_alias(std::size_t d, std::size_t l) {
  if (d == 3) return "F_" + std::to_string(l);
  if (d == 4) return "H_" + std::to_string(l);
  return control_label(d, l);
}

inline std::string bell_label(std::size_t d, std::size_t i, std::size_t j) {
  const char* sym = d == 3 ? "Ψ" : d == 4 ? "ψ" : "φ";
  return std::string(sym) + "_{" + std::to_string(i) + "," + std::to_string(j) + "}";
}

inline std::string relation_string(std::size_t d, std::size_t offset) {
  if (offset == 0) return "j_B = j_A";
  return "j_B = (j_A + " + std::to_string(offset) + ") mod " + std::to_string(d);
}

// ---------------------------------------------------------------------------
// table

struct TableRow {
  BellIndex input;
  std::size_t control = 0;      // Fourier outcome l
  std::size_t offset = 0;       // j_B - j_A mod d on the output support
  BellIndex output;             // best-matching Bell state after the switch
  double output_fidelity = 0.0;
};

/// Discrimination table computed by running the canonical switch on every Bell state.
inline std::vector<TableRow> discrimination_table(std::size_t d) {
  const SwitchConfig sw = canonical_config(d);
  const auto basis = bell_basis(d);
  std::vector<TableRow> rows;
  for (std::size_t k = 0; k < d * d; ++k) {
    const BellIndex in = BellIndex::from_flat(d, k);
    const StateVector out = apply_branchwise(sw, prepare_input(basis[k]));
    const ControlDecomposition dec = decompose_control(out);
    const StateVector target = StateVector::normalized({d, d}, dec.dominant_target);

    TableRow row{in, dec.dominant.idx, 0, in, 0.0};
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const double f = fidelity(target, basis[b]);
      if (f > row.output_fidelity) {
        row.output_fidelity = f;
        row.output = BellIndex::from_flat(d, b);
      }
    }
    const MeasurementRecord rec = analyze_state(basis[k], sw);
    row.offset = (rec.bob_outcome + d - rec.alice_outcome) % d;
    rows.push_back(row);
  }
  return rows;
}

inline ReportDocument cmd_table(std::size_t d, std::size_t cap = kBranchwiseDimCap) {
  check_dim(d, cap);
  ReportDocument doc;
  doc.command = "table";
  doc.parameters["dim"] = d;

  const auto rows = discrimination_table(d);
  Json jrows = Json::array();
  std::ostringstream text, csv;
  text << "Discrimination table, d=" << d << " (" << rows.size() << " Bell states)";
  if (below_protocol_range(d)) text << "  [note: outside protocol scope, d >= 3]";
  text << "\n";
  text << "control      relation (j_A, j_B)        output        input\n";
  csv << "input_i,input_j,control,control_alias,relation_offset,relation,output_i,output_j,output_fidelity\n";

  bool ok = true;
  for (const auto& r : rows) {
    const bool row_ok = decode(d, r.control, 0, r.offset) == r.input;
    ok = ok && row_ok;
    Json jr;
    jr["input"] = {r.input.i, r.input.j};
    jr["control"] = control_label(d, r.control);
    jr["control_alias"] = control_alias(d, r.control);
    jr["control_index"] = r.control;
    jr["relation_offset"] = r.offset;
    jr["relation"] = relation_string(d, r.offset);
    jr["output"] = {r.output.i, r.output.j};
    jr["output_fidelity"] = r.output_fidelity;
    jr["decode_round_trip"] = row_ok;
    jrows.push_back(std::move(jr));

    std::string ctl = control_alias(d, r.control);
    if (d == 3 || d == 4) ctl += " (" + control_label(d, r.control) + ")";
    char line[256];
    std::snprintf(line, sizeof line, "%-12s %-26s %-13s %s\n", ctl.c_str(), relation_string(d, r.offset).c_str(),
                  bell_label(d, r.output.i, r.output.j).c_str(), bell_label(d, r.input.i, r.input.j).c_str());
    text << line;
    csv << r.input.i << ',' << r.input.j << ',' << control_label(d, r.control) << ',' << control_alias(d, r.control)
        << ',' << r.offset << ",\"" << relation_string(d, r.offset) << "\"," << r.output.i << ',' << r.output.j << ','
        << fmt_real(r.output_fidelity) << '\n';
  }
  doc.results["rows"] = std::move(jrows);
  doc.results["outside_protocol_scope"] = below_protocol_range(d);
  doc.pass = ok;
  doc.text = text.str();
  doc.csv = csv.str();
  return doc;
}

// ---------------------------------------------------------------------------
// verify

struct SuiteResult {
  std::string name;
  bool pass = false;
  Json detail = Json::object();
};

/// Per-dimension checks. `tol` is the entrywise state tolerance; the
/// unitarity (1e-10) and Schmidt (1e-10) thresholds are fixed.
inline std::vector<SuiteResult> verify_dimension(std::size_t d, double tol, std::size_t dense_cap = kDenseDimCap) {
  std::vector<SuiteResult> out;
  const SwitchConfig sw = canonical_config(d);

  {
    const auto rep = verify_transition_law(d, ApplyPath::branchwise, tol);
    SuiteResult s{"transition_law", rep.all_pass()};
    s.detail["cases"] = rep.cases.size();
    s.detail["passed"] = rep.passed();
    s.detail["worst_entry_error"] = rep.worst_entry_error();
    Json failing = Json::array();
    for (const auto& c : rep.cases)
      if (!c.pass) failing.push_back({c.input.i, c.input.j});
    s.detail["failing"] = std::move(failing);
    out.push_back(std::move(s));
  }

  {
    const UnitaryMatrix dense = build_dense(sw, dense_cap);
    const double uerr = unitarity_error(dense.matrix());
    out.push_back({"unitarity", uerr <= kTolUnitary, Json{{"max_error", uerr}, {"threshold", kTolUnitary}}});

    std::mt19937_64 rng(0x5eed0000ULL + d);
    double worst = 0.0;
    constexpr int kInputs = 100;
    for (int n = 0; n < kInputs; ++n) {
      const StateVector in = random_state(switch_dims(d), rng);
      worst = std::max(worst, max_abs_diff(apply_dense(dense, d, in).amplitudes(), apply_branchwise(sw, in).amplitudes()));
    }
    out.push_back({"path_equivalence", worst <= tol, Json{{"inputs", kInputs}, {"max_error", worst}}});
  }

  {
    std::vector<StateVector> fourier;
    for (std::size_t l = 0; l < d; ++l) fourier.push_back(fourier_state(d, l));
    const double bell_err = gram_identity_error(bell_basis(d));
    const double fourier_err = gram_identity_error(fourier);
    out.push_back({"orthonormality", bell_err <= tol && fourier_err <= tol,
                   Json{{"bell_gram_error", bell_err}, {"fourier_gram_error", fourier_err}}});
  }

  {
    const auto rep = gravity::verify_correspondence(d);
    out.push_back({"gravity_correspondence", rep.all_pass(), Json{{"branches", d}, {"matched", rep.passed()}}});
  }

  {
    const auto det = confusion_deterministic(d, sw);
    const auto sampled = confusion(d, sw, 100, RngSeed{0xb5a0000ULL + d});
    out.push_back({"discrimination", det.is_identity() && sampled.is_identity(),
                   Json{{"states", d * d},
                        {"deterministic_identity", det.is_identity()},
                        {"sampled_shots_per_state", 100},
                        {"sampled_off_diagonal", sampled.off_diagonal()},
                        {"sampled_accuracy", sampled.accuracy()}}});
  }

  {
    double worst_residual = 0.0, worst_cut = 0.0, worst_target = 0.0;
    const double expected = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t k = 0; k < d * d; ++k) {
      const StateVector out_state = apply_branchwise(sw, prepare_input(bell_state(BellIndex::from_flat(d, k))));
      const auto dec = decompose_control(out_state);
      worst_residual = std::max(worst_residual, dec.residual);
      worst_cut = std::max(worst_cut, std::abs(control_target_schmidt(out_state).front() - 1.0));
      for (double v : schmidt_values(dec.dominant_target, d, d)) worst_target = std::max(worst_target, std::abs(v - expected));
    }
    out.push_back({"non_consumption", worst_residual <= tol && worst_cut <= 1e-10 && worst_target <= 1e-10,
                   Json{{"max_control_residual", worst_residual},
                        {"max_cut_schmidt_deviation", worst_cut},
                        {"max_target_schmidt_deviation", worst_target}}});
  }

  {
    const auto bound = bell_bound(d);
    out.push_back({"locc_contrast", bound == d,
                   Json{{"locc_bell_bound", bound}, {"switch_distinguishes", d * d}}});
  }

  {
    bool ok = true;
    double worst = 0.0;
    for (std::size_t k = 0; k < d * d; ++k) {
      const BellIndex b = BellIndex::from_flat(d, k);
      const auto res = iterate_switch(d, b, sw, 2);
      const double f = fidelity(res.final_target, bell_state(d, b.i, (b.j + 2) % d));
      worst = std::max(worst, 1.0 - f);
      for (const auto& r : res.rounds) ok = ok && r.dominant.idx == (d - b.i) % d;
      ok = ok && f >= 1.0 - tol;
    }
    out.push_back({"two_round_iteration", ok, Json{{"max_infidelity", worst}}});
  }
  return out;
}

inline ReportDocument cmd_verify(std::size_t lo, std::size_t hi, double tol, std::size_t cap = kVerifyDimCap) {
  if (lo > hi) throw UsageError("dimension range must satisfy LO <= HI");
  check_dim(lo, cap);
  check_dim(hi, cap);
  if (!(tol > 0.0)) throw UsageError("tolerance must be positive");

  ReportDocument doc;
  doc.command = "verify";
  doc.parameters["dim_lo"] = lo;
  doc.parameters["dim_hi"] = hi;
  doc.parameters["tol"] = tol;

  std::ostringstream text, csv;
  csv << "dim,suite,pass\n";
  Json dims = Json::array();
  bool all = true;
  for (std::size_t d = lo; d <= hi; ++d) {
    const auto suites = verify_dimension(d, tol, std::max(cap, kDenseDimCap));
    Json jd;
    jd["dim"] = d;
    if (below_protocol_range(d)) jd["note"] = "outside protocol scope d=" + std::to_string(d);
    Json js = Json::array();
    bool dim_ok = true;
    text << "d=" << d;
    if (below_protocol_range(d)) text << " (outside protocol scope d=" << d << ")";
    text << "\n";
    for (const auto& s : suites) {
      dim_ok = dim_ok && s.pass;
      js.push_back(Json{{"suite", s.name}, {"pass", s.pass}, {"detail", s.detail}});
      text << "  " << (s.pass ? "PASS" : "FAIL") << "  " << s.name << "\n";
      csv << d << ',' << s.name << ',' << (s.pass ? "true" : "false") << '\n';
    }
    jd["suites"] = std::move(js);
    jd["pass"] = dim_ok;
    dims.push_back(std::move(jd));
    all = all && dim_ok;
  }
  text << (all ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  doc.results["dimensions"] = std::move(dims);
  doc.pass = all;
  doc.text = text.str();
  doc.csv = csv.str();
  return doc;
}

// ---------------------------------------------------------------------------
// simulate

inline ReportDocument cmd_simulate(std::size_t d, std::size_t i, std::size_t j, std::size_t shots, std::uint64_t seed,
                                   std::size_t cap = kBranchwiseDimCap) {
  check_dim(d, cap);
  if (i >= d || j >= d) throw UsageError("Bell indices must lie in [0, d)");
  if (shots == 0) throw UsageError("shots must be >= 1");

  const BellIndex truth{d, i, j};
  const auto records = sample(d, truth, canonical_config(d), shots, RngSeed{seed});

  std::vector<std::uint64_t> control_counts(d), decoded_counts(d * d), pair_counts(d * d * d);
  std::uint64_t correct = 0;
  for (const auto& r : records) {
    ++control_counts[r.control_outcome.idx];
    ++decoded_counts[r.decoded.flat()];
    ++pair_counts[(r.control_outcome.idx * d + r.alice_outcome) * d + r.bob_outcome];
    correct += r.decoded == truth ? 1 : 0;
  }
  const double accuracy = static_cast<double>(correct) / static_cast<double>(shots);

  ReportDocument doc;
  doc.command = "simulate";
  doc.parameters = Json{{"dim", d}, {"i", i}, {"j", j}, {"shots", shots}, {"seed", seed}};

  Json jc = Json::array();
  for (std::size_t l = 0; l < d; ++l)
    if (control_counts[l]) jc.push_back(Json{{"control", control_label(d, l)}, {"index", l}, {"count", control_counts[l]}});
  Json jd = Json::array();
  for (std::size_t k = 0; k < d * d; ++k)
    if (decoded_counts[k]) {
      const auto b = BellIndex::from_flat(d, k);
      jd.push_back(Json{{"decoded", {b.i, b.j}}, {"count", decoded_counts[k]}});
    }
  Json jp = Json::array();
  std::ostringstream csv;
  csv << "control,j_a,j_b,decoded_i,decoded_j,count\n";
  for (std::size_t x = 0; x < pair_counts.size(); ++x) {
    if (!pair_counts[x]) continue;
    const std::size_t l = x / (d * d), ja = (x / d) % d, jb = x % d;
    const auto dec = decode(d, l, ja, jb);
    jp.push_back(Json{{"control", l}, {"j_a", ja}, {"j_b", jb}, {"decoded", {dec.i, dec.j}}, {"count", pair_counts[x]}});
    csv << l << ',' << ja << ',' << jb << ',' << dec.i << ',' << dec.j << ',' << pair_counts[x] << '\n';
  }
  doc.results["true_state"] = {i, j};
  doc.results["accuracy"] = accuracy;
  doc.results["control_counts"] = std::move(jc);
  doc.results["decoded_histogram"] = std::move(jd);
  doc.results["outcome_counts"] = std::move(jp);
  doc.pass = correct == shots;

  std::ostringstream text;
  text << "Simulated " << shots << " shots of " << bell_label(d, i, j) << " (d=" << d << ", seed=" << seed << ")\n";
  text << "accuracy: " << fmt_real(accuracy) << "\n";
  for (std::size_t l = 0; l < d; ++l)
    if (control_counts[l]) text << "control " << control_alias(d, l) << ": " << control_counts[l] << "\n";
  for (std::size_t k = 0; k < d * d; ++k)
    if (decoded_counts[k]) {
      const auto b = BellIndex::from_flat(d, k);
      text << "decoded " << bell_label(d, b.i, b.j) << ": " << decoded_counts[k] << "\n";
    }
  doc.text = text.str();
  doc.csv = csv.str();
  return doc;
}

// ---------------------------------------------------------------------------
// iterate

inline ReportDocument cmd_iterate(std::size_t d, std::size_t i, std::size_t j, std::size_t rounds, double tol,
                                  std::size_t cap = kBranchwiseDimCap) {
  check_dim(d, cap);
  if (i >= d || j >= d) throw UsageError("Bell indices must lie in [0, d)");
  if (rounds == 0) throw UsageError("rounds must be >= 1");

  const auto res = iterate_switch(d, BellIndex{d, i, j}, canonical_config(d), rounds);
  const std::size_t expected_l = (d - i) % d;
  const std::size_t final_j = (j + rounds) % d;
  const double f = fidelity(res.final_target, bell_state(d, i, final_j));

  ReportDocument doc;
  doc.command = "iterate";
  doc.parameters = Json{{"dim", d}, {"i", i}, {"j", j}, {"rounds", rounds}, {"tol", tol}};
  Json jr = Json::array();
  std::ostringstream text, csv;
  text << "Iterating the switch on " << bell_label(d, i, j) << " for " << rounds << " round(s), d=" << d << "\n";
  csv << "round,control,residual\n";
  bool ok = true;
  for (std::size_t r = 0; r < res.rounds.size(); ++r) {
    const auto& dec = res.rounds[r];
    ok = ok && dec.dominant.idx == expected_l;
    jr.push_back(Json{{"round", r + 1},
                      {"control", control_label(d, dec.dominant.idx)},
                      {"control_index", dec.dominant.idx},
                      {"residual", dec.residual}});
    text << "round " << r + 1 << ": control " << control_alias(d, dec.dominant.idx) << ", residual "
         << fmt_real(dec.residual) << "\n";
    csv << r + 1 << ',' << dec.dominant.idx << ',' << fmt_real(dec.residual) << '\n';
  }
  ok = ok && f >= 1.0 - tol;
  doc.results["rounds"] = std::move(jr);
  doc.results["final_target"] = {i, final_j};
  doc.results["final_fidelity"] = f;
  doc.pass = ok;
  text << "final target " << bell_label(d, i, final_j) << ", fidelity " << fmt_real(f) << "\n";
  doc.text = text.str();
  doc.csv = csv.str();
  return doc;
}

// ---------------------------------------------------------------------------
// gravity

inline ReportDocument cmd_gravity(std::size_t d, std::size_t cap = kBranchwiseDimCap) {
  check_dim(d, cap);
  const auto rep = gravity::verify_correspondence(d);

  ReportDocument doc;
  doc.command = "gravity";
  doc.parameters["dim"] = d;
  Json jb = Json::array();
  std::ostringstream text, csv;
  text << "Event-ordering ledger, d=" << d << "\n";
  csv << "branch,configuration,alice_operation,bob_operation,alice_exp_raw,alice_exp_mod_d,bob_exp_raw,bob_exp_mod_d,"
         "match\n";
  for (const auto& e : rep.entries) {
    jb.push_back(Json{{"branch", e.branch},
                      {"control", "|" + std::to_string(e.branch) + ">"},
                      {"configuration", "M: " + e.label},
                      {"alice_signals", e.signals.alice},
                      {"bob_signals", e.signals.bob},
                      {"alice_operation", e.alice_word},
                      {"bob_operation", e.bob_word},
                      {"alice_exp_raw", e.alice_exp_raw},
                      {"alice_exp_mod_d", e.alice_exp_mod_d},
                      {"bob_exp_raw", e.bob_exp_raw},
                      {"bob_exp_mod_d", e.bob_exp_mod_d},
                      {"alice_op", "shift^" + std::to_string(e.alice_exp_mod_d)},
                      {"bob_op", "shift^" + std::to_string(e.bob_exp_mod_d)},
                      {"matrices_match", e.matrices_match},
                      {"exponent_law", e.exponent_law},
                      {"pass", e.pass()}});
    text << "branch " << e.branch << "  M: " << e.label << "\n"
         << "  Alice: " << e.signals.alice << " -> " << e.alice_word << " = shift^" << e.alice_exp_mod_d << "\n"
         << "  Bob:   " << e.signals.bob << " -> " << e.bob_word << " = shift^" << e.bob_exp_raw << " = shift^"
         << e.bob_exp_mod_d << " (mod " << d << ")\n"
         << "  " << (e.pass() ? "match" : "MISMATCH") << " U_" << e.branch + 1 << ", V_" << e.branch + 1 << "\n";
    csv << e.branch << ",\"" << e.label << "\",\"" << e.alice_word << "\",\"" << e.bob_word << "\"," << e.alice_exp_raw
        << ',' << e.alice_exp_mod_d << ',' << e.bob_exp_raw << ',' << e.bob_exp_mod_d << ','
        << (e.pass() ? "true" : "false") << '\n';
  }
  doc.results["branches"] = std::move(jb);
  doc.results["matched"] = rep.passed();
  doc.pass = rep.all_pass();
  doc.text = text.str();
  doc.csv = csv.str();
  return doc;
}

// ---------------------------------------------------------------------------
// bound

inline ReportDocument cmd_bound(std::size_t d1, std::size_t d2, const std::vector<double>& schmidt, bool maximal) {
  std::optional<LoccBoundInput> input;
  try {
    if (maximal) {
      if (d1 != d2) throw UsageError("--maximal requires d1 == d2");
      input = LoccBoundInput::maximal(d1);
    } else {
      input = LoccBoundInput(d1, d2, schmidt);
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const LoccBound b = locc_bound(*input);

  ReportDocument doc;
  doc.command = "bound";
  doc.parameters = Json{{"d1", d1}, {"d2", d2}, {"maximal", maximal}, {"schmidt", input->schmidt}};
  doc.results["bound"] = b.value;
  doc.results["floor"] = b.floor;
  std::ostringstream text, csv;
  text << "LOCC upper bound: " << fmt_real(b.value) << " (floor " << b.floor << ")\n";
  csv << "d1,d2,bound,floor,switch_distinguishes\n" << d1 << ',' << d2 << ',' << fmt_real(b.value) << ',' << b.floor << ',';
  if (maximal) {
    doc.results["switch_distinguishes"] = d1 * d1;
    text << "ICO protocol distinguishes " << d1 * d1 << " states\n";
    csv << d1 * d1;
  }
  csv << '\n';
  doc.pass = true;
  doc.text = text.str();
  doc.csv = csv.str();
  return doc;
}

}  // namespace qswitch::report
