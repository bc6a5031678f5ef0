#include "leoho/topology.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace leoho {

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::Proposed: return "Proposed";
    case Scheme::NTN: return "NTN";
    case Scheme::NTN_GS: return "NTN-GS";
    case Scheme::NTN_SMN: return "NTN-SMN";
  }
  return "?";
}

Scheme parse_scheme(std::string_view text) {
  std::string s(text);
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  std::replace(s.begin(), s.end(), '_', '-');
  if (s == "PROPOSED") return Scheme::Proposed;
  if (s == "NTN") return Scheme::NTN;
  if (s == "NTN-GS") return Scheme::NTN_GS;
  if (s == "NTN-SMN") return Scheme::NTN_SMN;
  throw std::invalid_argument("unknown handover scheme: " + std::string(text));
}

IslGraph::IslGraph(std::size_t num_satellites, std::vector<GroundStation> ground_stations,
                   double t)
    : t_(t), num_sats_(num_satellites), gs_(std::move(ground_stations)) {
  adj_.resize(num_sats_ + gs_.size() + 1);
  pos_.resize(adj_.size());
  for (std::size_t i = 0; i < gs_.size(); ++i) pos_[gs_node(i)] = to_ecef(gs_[i].location);
  for (std::size_t i = 0; i < gs_.size(); ++i) {
    if (gs_[i].attached_to_core) {
      pos_[core_node()] = pos_[gs_node(i)];
      break;
    }
  }
}

NodeKind IslGraph::kind(NodeId n) const {
  if (n < num_sats_) return NodeKind::Satellite;
  if (n < num_sats_ + gs_.size()) return NodeKind::GroundStation;
  if (n == core_node()) return NodeKind::Core;
  throw std::out_of_range("unknown node " + std::to_string(n));
}

bool IslGraph::has_edge(NodeId a, NodeId b) const {
  const auto& list = adj_.at(a);
  return std::any_of(list.begin(), list.end(), [b](const Edge& e) { return e.to == b; });
}

void IslGraph::add_edge(NodeId a, NodeId b, double delay_ms) {
  if (a == b || has_edge(a, b)) return;
  if (!(delay_ms >= 0.0)) throw std::invalid_argument("edge delay must be non-negative");
  adj_.at(a).push_back({b, delay_ms});
  adj_.at(b).push_back({a, delay_ms});
  if (a < num_sats_ && b < num_sats_) ++isl_edges_;
}

void IslGraph::set_smn_hosts(std::vector<SatId> hosts) {
  for (SatId h : hosts) {
    if (h >= num_sats_) throw std::out_of_range("SMN host is not a satellite");
  }
  std::sort(hosts.begin(), hosts.end());
  hosts.erase(std::unique(hosts.begin(), hosts.end()), hosts.end());
  smn_hosts_ = std::move(hosts);
}

double propagation_delay_ms(const Vec3& a, const Vec3& b) {
  return (a - b).norm() / kSpeedOfLightKmPerS * 1000.0;
}

IslGraph build_isl_grid(const ConstellationConfig& layout, std::span<const SatelliteState> states,
                        std::span<const GroundStation> ground_stations,
                        const TopologyParams& params, double t) {
  const std::uint32_t planes = layout.num_planes;
  const std::uint32_t per_plane = layout.sats_per_plane;
  if (states.size() != layout.total()) {
    throw std::invalid_argument("state count does not match the constellation layout");
  }
  IslGraph g(states.size(),
             std::vector<GroundStation>(ground_stations.begin(), ground_stations.end()), t);
  for (const auto& s : states) g.set_position(s.sat_id, s.position_ecef_km);

  auto id = [per_plane](std::uint32_t p, std::uint32_t k) { return p * per_plane + k; };
  auto link = [&](SatId a, SatId b) {
    g.add_edge(a, b, propagation_delay_ms(g.position(a), g.position(b)));
  };
  for (std::uint32_t p = 0; p < planes; ++p) {
    for (std::uint32_t k = 0; k < per_plane; ++k) {
      if (per_plane > 1) link(id(p, k), id(p, (k + 1) % per_plane));
      if (planes > 1) {
        const bool seam = p + 1 == planes;
        if (!seam || params.seam == Seam::Wrap) link(id(p, k), id((p + 1) % planes, k));
      }
    }
  }

  const double gs_min_elev = params.gs_min_elevation_deg.value_or(layout.min_elevation_deg);
  for (std::size_t i = 0; i < ground_stations.size(); ++i) {
    const NodeId gs = g.gs_node(i);
    for (const auto& s : states) {
      if (elevation_deg(g.position(gs), s.position_ecef_km) >= gs_min_elev) {
        link(s.sat_id, gs);
      }
    }
    if (ground_stations[i].attached_to_core) g.add_edge(gs, g.core_node(), params.gs_core_lag_ms);
  }

  if (!params.smn_hosts.empty()) {
    g.set_smn_hosts(params.smn_hosts);
  } else {
    std::vector<SatId> hosts;
    const std::uint32_t slot = params.smn_host_index % per_plane;
    for (std::uint32_t p = 0; p < planes; ++p) hosts.push_back(id(p, slot));
    g.set_smn_hosts(std::move(hosts));
  }
  return g;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr NodeId kNone = std::numeric_limits<NodeId>::max();

std::vector<NodeId> trace_back(const std::vector<NodeId>& pred, NodeId v) {
  std::vector<NodeId> out;
  for (NodeId n = v; n != kNone; n = pred[n]) out.push_back(n);
  std::reverse(out.begin(), out.end());
  return out;
}

bool may_forward(const IslGraph& g, NodeId src, NodeId u, NodeId u_pred, NodeId v) {
  if (u == src) return true;
  switch (g.kind(u)) {
    case NodeKind::Satellite: return true;
    case NodeKind::Core: return false;
    case NodeKind::GroundStation:
      if (g.kind(u_pred) == NodeKind::Core) return g.kind(v) == NodeKind::Satellite;
      return g.kind(v) == NodeKind::Core;
  }
  return false;
}

// Dijkstra that stops once every target at the minimal distance is settled.
std::optional<Path> search(const IslGraph& g, NodeId src, std::span<const NodeId> targets) {
  const std::size_t n = g.num_nodes();
  if (src >= n) throw std::out_of_range("source node out of range");
  std::vector<char> is_target(n, 0);
  for (NodeId t : targets) {
    if (t >= n) throw std::out_of_range("target node out of range");
    is_target[t] = 1;
  }
  if (is_target[src]) return Path{{src}, 0.0};

  std::vector<double> dist(n, kInf);
  std::vector<NodeId> pred(n, kNone);
  std::vector<char> done(n, 0);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[src] = 0.0;
  heap.push({0.0, src});

  double best = kInf;
  std::optional<Path> result;
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (done[u] || d > dist[u]) continue;
    if (d > best) break;
    done[u] = 1;
    if (is_target[u]) {
      Path candidate{trace_back(pred, u), d};
      if (!result || candidate.nodes < result->nodes) result = std::move(candidate);
      best = d;
      continue;
    }
    for (const Edge& e : g.neighbors(u)) {
      if (done[e.to] || !may_forward(g, src, u, pred[u], e.to)) continue;
      const double nd = d + e.delay_ms;
      if (nd < dist[e.to]) {
        dist[e.to] = nd;
        pred[e.to] = u;
        heap.push({nd, e.to});
      } else if (nd == dist[e.to] && pred[e.to] != u) {
        auto via_u = trace_back(pred, u);
        via_u.push_back(e.to);
        if (via_u < trace_back(pred, e.to)) pred[e.to] = u;
      }
    }
  }
  return result;
}

}  // namespace

std::optional<Path> min_delay_path(const IslGraph& graph, NodeId src, NodeId dst) {
  const NodeId targets[] = {dst};
  return search(graph, src, targets);
}

std::optional<Path> min_delay_path_to_any(const IslGraph& graph, NodeId src,
                                          std::span<const NodeId> targets) {
  if (targets.empty()) return std::nullopt;
  return search(graph, src, targets);
}

std::optional<Path> core_attachment_path(const IslGraph& graph, SatId sat, Scheme scheme) {
  if (sat >= graph.num_satellites()) throw std::out_of_range("unknown satellite");
  const NodeId src = graph.satellite_node(sat);
  switch (scheme) {
    case Scheme::NTN: {
      bool any_attached = false;
      for (std::size_t i = 0; i < graph.num_ground_stations(); ++i) {
        any_attached = any_attached || graph.ground_station(i).attached_to_core;
      }
      if (!any_attached) return std::nullopt;
      return min_delay_path(graph, src, graph.core_node());
    }
    case Scheme::NTN_GS: {
      std::vector<NodeId> targets;
      for (std::size_t i = 0; i < graph.num_ground_stations(); ++i) {
        targets.push_back(graph.gs_node(i));
      }
      return min_delay_path_to_any(graph, src, targets);
    }
    case Scheme::NTN_SMN: {
      std::vector<NodeId> targets(graph.smn_hosts().begin(), graph.smn_hosts().end());
      return min_delay_path_to_any(graph, src, targets);
    }
    case Scheme::Proposed: break;
  }
  throw std::invalid_argument("the proposed scheme has no core attachment");
}

}  // namespace leoho
