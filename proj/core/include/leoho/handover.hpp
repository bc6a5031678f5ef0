#pragma once

#include <optional>
#include <vector>

#include "leoho/scheme.hpp"
#include "leoho/topology.hpp"
#include "leoho/ue.hpp"

namespace leoho {

struct LatencyBreakdown {
  double ue_ran_ms = 0.0;
  double ran_ran_ms = 0.0;
  double ran_core_ms = 0.0;

  double total() const { return ue_ran_ms + ran_ran_ms + ran_core_ms; }
};

struct HandoverRecord {
  Scheme scheme = Scheme::Proposed;
  UeId ue_id = 0;
  SatId source_sat = 0;
  SatId target_sat = 0;
  double t_trigger = 0.0;
  double latency_ms = 0.0;
  LatencyBreakdown breakdown;
  bool abnormal = false;
  // No path between the participants; latency fields are meaningless.
  bool failed = false;
};

/// Calibration knobs for the signaling cost model.
struct SchemeParams {
  double d_proc_ms = 2.0;       // charged at every node a message reaches
  double rrc_setup_ms = 12.0;   // UE <-> target radio procedure
  double gs_core_lag_ms = 2.0;  // terrestrial ground station -> core hop
};

/// Throws std::invalid_argument for negative parameters.
void validate(const SchemeParams& params);

/// Propagation along the path plus processing at each node after the first.
double message_delay_ms(const Path& path, const SchemeParams& params);

/// Runs one handover as a timed message sequence on a frozen graph.
///
/// Every scheme: decision source->target, confirm target->source, then in
/// parallel (a) command source->UE plus RRC setup with the target and
/// (b) SN status transfer source->target; attachment completes at the later
/// branch. Non-proposed schemes then add a path-switch request and its ack
/// between the target and their anchor. An abnormal Proposed handover pays
/// the NTN core leg and is flagged. Throws std::invalid_argument when
/// source == target.
HandoverRecord execute_handover(Scheme scheme, UeId ue, const GeodeticPoint& ue_position,
                                SatId source, SatId target, const IslGraph& graph,
                                const SchemeParams& params, double t, bool abnormal = false);

/// A handover is abnormal when the RAN's target is not the one the core
/// predicted (including no prediction at all).
bool detect_abnormal(std::optional<SatId> predicted_target, SatId actual_target);

/// Handover latency plus one UE <-> server round trip through the core
/// after attachment; nullopt when the core is unreachable.
std::optional<double> ping_stall_ms(const HandoverRecord& record,
                                    const GeodeticPoint& ue_position, const IslGraph& graph,
                                    const SchemeParams& params);

}  // namespace leoho
