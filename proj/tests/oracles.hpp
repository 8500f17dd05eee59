#pragma once

// Test-only reference values and brute-force oracles. Nothing here calls the
// library's kron / mat_pow / switch assembly, so the checks that use these
// stay independent of the code under test.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

/// A ket |a b> with a phase factor exp(2 pi i * phase / base).
struct Term {
  std::size_t a, b;
  int phase;
};

/// The qutrit Bell states, transcribed ket by ket; phases in units of 2 pi / 3.
inline const std::array<std::vector<Term>, 9> kQutritBell = {{
    {{0, 0, 0}, {1, 1, 0}, {2, 2, 0}},  // (0,0)
    {{0, 1, 0}, {1, 2, 0}, {2, 0, 0}},  // (0,1)
    {{0, 2, 0}, {1, 0, 0}, {2, 1, 0}},  // (0,2)
    {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}},  // (1,0)
    {{0, 1, 0}, {1, 2, 1}, {2, 0, 2}},  // (1,1)
    {{0, 2, 0}, {1, 0, 1}, {2, 1, 2}},  // (1,2)
    {{0, 0, 0}, {1, 1, 2}, {2, 2, 1}},  // (2,0)
    {{0, 1, 0}, {1, 2, 2}, {2, 0, 1}},  // (2,1)
    {{0, 2, 0}, {1, 0, 2}, {2, 1, 1}},  // (2,2)
}};

/// The ququart Bell states, transcribed ket by ket; phases are powers of i.
inline const std::array<std::vector<Term>, 16> kQuquartBell = {{
    {{0, 0, 0}, {1, 1, 0}, {2, 2, 0}, {3, 3, 0}},
    {{0, 1, 0}, {1, 2, 0}, {2, 3, 0}, {3, 0, 0}},
    {{0, 2, 0}, {1, 3, 0}, {2, 0, 0}, {3, 1, 0}},
    {{0, 3, 0}, {1, 0, 0}, {2, 1, 0}, {3, 2, 0}},
    {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {3, 3, 3}},
    {{0, 1, 0}, {1, 2, 1}, {2, 3, 2}, {3, 0, 3}},
    {{0, 2, 0}, {1, 3, 1}, {2, 0, 2}, {3, 1, 3}},
    {{0, 3, 0}, {1, 0, 1}, {2, 1, 2}, {3, 2, 3}},
    {{0, 0, 0}, {1, 1, 2}, {2, 2, 0}, {3, 3, 2}},
    {{0, 1, 0}, {1, 2, 2}, {2, 3, 0}, {3, 0, 2}},
    {{0, 2, 0}, {1, 3, 2}, {2, 0, 0}, {3, 1, 2}},
    {{0, 3, 0}, {1, 0, 2}, {2, 1, 0}, {3, 2, 2}},
    {{0, 0, 0}, {1, 1, 3}, {2, 2, 2}, {3, 3, 1}},
    {{0, 1, 0}, {1, 2, 3}, {2, 3, 2}, {3, 0, 1}},
    {{0, 2, 0}, {1, 3, 3}, {2, 0, 2}, {3, 1, 1}},
    {{0, 3, 0}, {1, 0, 3}, {2, 1, 2}, {3, 2, 1}},
}};

inline Complex qutrit_phase(int k) {
  switch (((k % 3) + 3) % 3) {
    case 0: return {1.0, 0.0};
    case 1: return std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    default: return std::polar(1.0, 4.0 * std::numbers::pi / 3.0);
  }
}

inline Complex i_power(int k) {
  static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((k % 4) + 4) % 4];
}

inline std::vector<Complex> amplitudes(std::size_t d, const std::vector<Term>& terms) {
  std::vector<Complex> out(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (const auto& t : terms) out[t.a * d + t.b] = amp * (d == 3 ? qutrit_phase(t.phase) : i_power(t.phase));
  return out;
}

/// Control Fourier states spelled out for d = 4 (H_0..H_3).
inline std::vector<Complex> ququart_control(std::size_t l) {
  static const int phases[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 0, 2}, {0, 3, 2, 1}};
  std::vector<Complex> out(4);
  for (std::size_t k = 0; k < 4; ++k) out[k] = 0.5 * i_power(phases[l][k]);
  return out;
}

/// Transition map of the d = 3 analyzer: input (i, j) -> (control F_l, output j').
struct Transition {
  std::size_t i, j, control, out_j;
};

inline const std::vector<Transition> kQutritTransitions = {
    {0, 0, 0, 1}, {0, 1, 0, 2}, {0, 2, 0, 0},  // F_0
    {1, 0, 2, 1}, {1, 1, 2, 2}, {1, 2, 2, 0},  // F_2
    {2, 0, 1, 1}, {2, 1, 1, 2}, {2, 2, 1, 0},  // F_1
};

inline const std::vector<Transition> kQuquartTransitions = {
    {0, 0, 0, 1}, {0, 1, 0, 2}, {0, 2, 0, 3}, {0, 3, 0, 0},  // H_0
    {1, 0, 3, 1}, {1, 1, 3, 2}, {1, 2, 3, 3}, {1, 3, 3, 0},  // H_3
    {2, 0, 2, 1}, {2, 1, 2, 2}, {2, 2, 2, 3}, {2, 3, 2, 0},  // H_2
    {3, 0, 1, 1}, {3, 1, 1, 2}, {3, 2, 1, 3}, {3, 3, 1, 0},  // H_1
};

/// Discrimination-table rows in printed order: control alias, relation
/// string, output (i, j), input (i, j).
struct TableRow {
  std::string control;
  std::string relation;
  std::pair<std::size_t, std::size_t> output, input;
};

inline const std::vector<TableRow> kTable3 = {
    {"F_0", "j_B = (j_A + 1) mod 3", {0, 1}, {0, 0}}, {"F_0", "j_B = (j_A + 2) mod 3", {0, 2}, {0, 1}},
    {"F_0", "j_B = j_A", {0, 0}, {0, 2}},             {"F_2", "j_B = (j_A + 1) mod 3", {1, 1}, {1, 0}},
    {"F_2", "j_B = (j_A + 2) mod 3", {1, 2}, {1, 1}}, {"F_2", "j_B = j_A", {1, 0}, {1, 2}},
    {"F_1", "j_B = (j_A + 1) mod 3", {2, 1}, {2, 0}}, {"F_1", "j_B = (j_A + 2) mod 3", {2, 2}, {2, 1}},
    {"F_1", "j_B = j_A", {2, 0}, {2, 2}},
};

inline const std::vector<TableRow> kTable4 = {
    {"H_0", "j_B = (j_A + 1) mod 4", {0, 1}, {0, 0}}, {"H_0", "j_B = (j_A + 2) mod 4", {0, 2}, {0, 1}},
    {"H_0", "j_B = (j_A + 3) mod 4", {0, 3}, {0, 2}}, {"H_0", "j_B = j_A", {0, 0}, {0, 3}},
    {"H_3", "j_B = (j_A + 1) mod 4", {1, 1}, {1, 0}}, {"H_3", "j_B = (j_A + 2) mod 4", {1, 2}, {1, 1}},
    {"H_3", "j_B = (j_A + 3) mod 4", {1, 3}, {1, 2}}, {"H_3", "j_B = j_A", {1, 0}, {1, 3}},
    {"H_2", "j_B = (j_A + 1) mod 4", {2, 1}, {2, 0}}, {"H_2", "j_B = (j_A + 2) mod 4", {2, 2}, {2, 1}},
    {"H_2", "j_B = (j_A + 3) mod 4", {2, 3}, {2, 2}}, {"H_2", "j_B = j_A", {2, 0}, {2, 3}},
    {"H_1", "j_B = (j_A + 1) mod 4", {3, 1}, {3, 0}}, {"H_1", "j_B = (j_A + 2) mod 4", {3, 2}, {3, 1}},
    {"H_1", "j_B = (j_A + 3) mod 4", {3, 3}, {3, 2}}, {"H_1", "j_B = j_A", {3, 0}, {3, 3}},
};

/// Event-ordering operation words per branch (control |m>): configuration,
/// Alice's operation, Bob's operation.
struct SignalRow {
  std::string configuration, alice, bob;
};

inline const std::vector<SignalRow> kSignalTable3 = {
    {"B1→B2→A", "U_{A|B2}", "U_{B2} U_{B1}"},
    {"B1→A→B2", "U_{A|B1}", "U_{B2|A} U_{B1}"},
    {"A→B1→B2", "U_{A}", "U_{B2|A} U_{B1|A}"},
};

inline const std::vector<SignalRow> kSignalTable4 = {
    {"B1→B2→B3→A", "U_{A|B3}", "U_{B3} U_{B2} U_{B1}"},
    {"B1→B2→A→B3", "U_{A|B2}", "U_{B3|A} U_{B2} U_{B1}"},
    {"B1→A→B2→B3", "U_{A|B1}", "U_{B3|A} U_{B2|A} U_{B1}"},
    {"A→B1→B2→B3", "U_{A}", "U_{B3|A} U_{B2|A} U_{B1|A}"},
};

/// Element formula of the canonical switch on basis states:
/// |k, a, b> -> |k, a + k, b + k + 1> (all mod d).
inline std::vector<Complex> brute_switch(std::size_t d, const std::vector<Complex>& in) {
  std::vector<Complex> out(in.size());
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        out[(k * d + (a + k) % d) * d + (b + k + 1) % d] += in[(k * d + a) * d + b];
  return out;
}

/// exp(2 pi i m / d) straight from the definition.
inline Complex omega(std::size_t d, long long m) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(d));
}

inline std::vector<Complex> fourier(std::size_t d, std::size_t l) {
  std::vector<Complex> v(d);
  for (std::size_t k = 0; k < d; ++k) v[k] = omega(d, static_cast<long long>(k * l)) / std::sqrt(double(d));
  return v;
}

inline std::vector<Complex> bell(std::size_t d, std::size_t i, std::size_t j) {
  std::vector<Complex> v(d * d);
  for (std::size_t k = 0; k < d; ++k) v[k * d + (k + j) % d] = omega(d, static_cast<long long>(i * k)) / std::sqrt(double(d));
  return v;
}

inline std::vector<Complex> kron(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> out;
  for (auto x : a)
    for (auto y : b) out.push_back(x * y);
  return out;
}

/// Brute-force decode table: run every input through the element-formula
/// switch and record (control outcome, j_B - j_A) -> input.
inline std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> brute_decode_table(
    std::size_t d) {
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> table;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto out = brute_switch(d, kron(fourier(d, 0), bell(d, i, j)));
      for (std::size_t l = 0; l < d; ++l) {
        const auto f = fourier(d, l);
        std::vector<Complex> t(d * d);
        double p = 0.0;
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t x = 0; x < d * d; ++x) t[x] += std::conj(f[k]) * out[k * d * d + x];
        for (auto z : t) p += std::norm(z);
        if (p < 0.5) continue;
        for (std::size_t x = 0; x < d * d; ++x)
          if (std::norm(t[x]) > 1e-6) table[{l, (x % d + d - x / d) % d}] = {i, j};
      }
    }
  return table;
}

}  // namespace oracle
