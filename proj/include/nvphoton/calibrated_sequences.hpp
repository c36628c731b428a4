// Generated by nvphoton_calibrate. Do not edit.
#ifndef NVPHOTON_CALIBRATED_SEQUENCES_HPP
#define NVPHOTON_CALIBRATED_SEQUENCES_HPP

#include "nvphoton/protocol.hpp"

namespace nvphoton::calibrated {

// first=[H_e@after, CX_en@after] periodic=[H_e@after, CX_en@after] (143 candidates)
inline GateSequence ghz() {
  return {{{GateKind::HadamardE, Placement::AfterEmission}, {GateKind::ControlledXEN, Placement::AfterEmission}},
          {{GateKind::HadamardE, Placement::AfterEmission}, {GateKind::ControlledXEN, Placement::AfterEmission}}};
}

// first=[H_e@after, CX_en@after] periodic=[H_e@after, CX_en@after, H_e@after, CY_en@after, S_e@after] (54745 candidates)
inline GateSequence cluster() {
  return {{{GateKind::HadamardE, Placement::AfterEmission}, {GateKind::ControlledXEN, Placement::AfterEmission}},
          {{GateKind::HadamardE, Placement::AfterEmission}, {GateKind::ControlledXEN, Placement::AfterEmission}, {GateKind::HadamardE, Placement::AfterEmission}, {GateKind::ControlledYEN, Placement::AfterEmission}, {GateKind::PhaseE, Placement::AfterEmission}}};
}

}  // namespace nvphoton::calibrated

#endif  // NVPHOTON_CALIBRATED_SEQUENCES_HPP
