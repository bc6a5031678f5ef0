#include "leoho/handover.hpp"

#include <algorithm>
#include <stdexcept>

namespace leoho {

void validate(const SchemeParams& params) {
  if (!(params.d_proc_ms >= 0.0) || !(params.rrc_setup_ms >= 0.0) ||
      !(params.gs_core_lag_ms >= 0.0)) {
    throw std::invalid_argument("scheme parameters must be non-negative");
  }
}

double message_delay_ms(const Path& path, const SchemeParams& params) {
  return path.total_ms + static_cast<double>(path.hops()) * params.d_proc_ms;
}

bool detect_abnormal(std::optional<SatId> predicted_target, SatId actual_target) {
  return !predicted_target || *predicted_target != actual_target;
}

HandoverRecord execute_handover(Scheme scheme, UeId ue, const GeodeticPoint& ue_position,
                                SatId source, SatId target, const IslGraph& graph,
                                const SchemeParams& params, double t, bool abnormal) {
  if (source == target) throw std::invalid_argument("handover source equals target");
  if (source >= graph.num_satellites() || target >= graph.num_satellites()) {
    throw std::out_of_range("handover endpoint is not a satellite in the graph");
  }

  HandoverRecord rec;
  rec.scheme = scheme;
  rec.ue_id = ue;
  rec.source_sat = source;
  rec.target_sat = target;
  rec.t_trigger = t;
  rec.abnormal = abnormal;

  const auto xn = min_delay_path(graph, graph.satellite_node(source), graph.satellite_node(target));
  if (!xn) {
    rec.failed = true;
    return rec;
  }
  const double xn_ms = message_delay_ms(*xn, params);

  // Steps 1 and 2: decision and confirmation over Xn.
  const double preparation = 2.0 * xn_ms;
  // Step 3.a: command over the source's radio link, then RRC with the target.
  const double radio = propagation_delay_ms(graph.position(graph.satellite_node(source)),
                                            to_ecef(ue_position)) +
                       params.d_proc_ms + params.rrc_setup_ms;
  // Step 3.b: SN status transfer, in parallel with 3.a.
  const double sn_transfer = xn_ms;

  rec.breakdown.ran_ran_ms = preparation;
  if (radio >= sn_transfer) {
    rec.breakdown.ue_ran_ms = radio;
  } else {
    rec.breakdown.ran_ran_ms += sn_transfer;
  }

  Scheme core_leg = scheme;
  if (scheme == Scheme::Proposed && abnormal) core_leg = Scheme::NTN;
  if (core_leg != Scheme::Proposed) {
    const auto anchor = core_attachment_path(graph, target, core_leg);
    if (!anchor) {
      rec.failed = true;
      return rec;
    }
    // Path-switch request and acknowledgement. A core hosted on the target
    // itself still processes both.
    double leg = message_delay_ms(*anchor, params);
    if (anchor->hops() == 0) leg += params.d_proc_ms;
    rec.breakdown.ran_core_ms = 2.0 * leg;
  }
  rec.latency_ms = rec.breakdown.total();
  return rec;
}

std::optional<double> ping_stall_ms(const HandoverRecord& record,
                                    const GeodeticPoint& ue_position, const IslGraph& graph,
                                    const SchemeParams& params) {
  if (record.failed) return std::nullopt;
  const auto core = core_attachment_path(graph, record.target_sat, Scheme::NTN);
  if (!core) return std::nullopt;
  const double access = propagation_delay_ms(
      graph.position(graph.satellite_node(record.target_sat)), to_ecef(ue_position));
  const double one_way = access + params.d_proc_ms + message_delay_ms(*core, params);
  return record.latency_ms + 2.0 * one_way;
}

}  // namespace leoho
