// Walks one unknown Bell state through the analyzer and prints each step.
//
//   ./bsa_walkthrough [d] [i] [j]

#include <cstdlib>
#include <iostream>

#include "qswitch/qswitch.hpp"

int main(int argc, char** argv) {
  const std::size_t d = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 5;
  const std::size_t i = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 2;
  const std::size_t j = argc > 3 ? std::strtoul(argv[3], nullptr, 10) : 4;

  using namespace qswitch;
  const BellIndex truth{d, i, j};
  const SwitchConfig sw = canonical_config(d);

  const StateVector out = apply_branchwise(sw, tensor(fourier_state(d, 0), bell_state(truth)));
  const ControlDecomposition dec = decompose_control(out);
  std::cout << "control collapses to D_" << dec.dominant.idx << " with probability " << 1.0 - dec.residual << "\n";

  const auto schmidt = schmidt_values(dec.dominant_target, d, d);
  std::cout << "target Schmidt coefficients:";
  for (double s : schmidt) std::cout << ' ' << s;
  std::cout << "\n";

  const MeasurementRecord rec = analyze_deterministic(d, truth, sw);
  std::cout << "one target outcome: (j_A, j_B) = (" << rec.alice_outcome << ", " << rec.bob_outcome << ")\n";
  std::cout << "decoded Bell index: (" << rec.decoded.i << ", " << rec.decoded.j << ")"
            << (rec.decoded == truth ? "  correct" : "  WRONG") << "\n";
  return rec.decoded == truth ? 0 : 1;
}
