#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leoho/orbit.hpp"
#include "leoho/scheme.hpp"

namespace leoho {

using NodeId = std::uint32_t;

enum class NodeKind { Satellite, GroundStation, Core };

struct GroundStation {
  std::string gs_id;
  GeodeticPoint location;
  bool attached_to_core = false;
};

enum class Seam { Wrap, Open };

struct TopologyParams {
  Seam seam = Seam::Wrap;
  // Unset: use the constellation's user minimum elevation.
  std::optional<double> gs_min_elevation_deg;
  double gs_core_lag_ms = 2.0;
  // Core-hosting satellites for NTN-SMN. Empty: slot `smn_host_index` of every plane.
  std::vector<SatId> smn_hosts;
  std::uint32_t smn_host_index = 0;
};

struct Edge {
  NodeId to = 0;
  double delay_ms = 0.0;
};

/// Snapshot of the satellite/ground graph at one epoch. Node ids: satellites
/// first (node == sat_id), then ground stations in list order, then the core.
class IslGraph {
 public:
  IslGraph(std::size_t num_satellites, std::vector<GroundStation> ground_stations, double t = 0.0);

  double time() const { return t_; }
  std::size_t num_satellites() const { return num_sats_; }
  std::size_t num_ground_stations() const { return gs_.size(); }
  std::size_t num_nodes() const { return adj_.size(); }

  NodeId satellite_node(SatId id) const { return id; }
  NodeId gs_node(std::size_t i) const { return static_cast<NodeId>(num_sats_ + i); }
  NodeId core_node() const { return static_cast<NodeId>(num_sats_ + gs_.size()); }
  NodeKind kind(NodeId n) const;
  const GroundStation& ground_station(std::size_t i) const { return gs_.at(i); }

  std::span<const Edge> neighbors(NodeId n) const { return adj_.at(n); }
  std::size_t degree(NodeId n) const { return adj_.at(n).size(); }
  /// Count of undirected satellite-satellite edges.
  std::size_t isl_edge_count() const { return isl_edges_; }

  const Vec3& position(NodeId n) const { return pos_.at(n); }
  void set_position(NodeId n, const Vec3& p) { pos_.at(n) = p; }

  /// Adds an undirected edge; a duplicate pair is ignored.
  void add_edge(NodeId a, NodeId b, double delay_ms);
  bool has_edge(NodeId a, NodeId b) const;

  void set_smn_hosts(std::vector<SatId> hosts);
  std::span<const SatId> smn_hosts() const { return smn_hosts_; }

 private:
  double t_;
  std::size_t num_sats_;
  std::vector<GroundStation> gs_;
  std::vector<std::vector<Edge>> adj_;
  std::vector<Vec3> pos_;
  std::vector<SatId> smn_hosts_;
  std::size_t isl_edges_ = 0;
};

/// One-way light-time between two points, milliseconds.
double propagation_delay_ms(const Vec3& a, const Vec3& b);

/// +Grid ISLs, ground-station feeder links to every satellite above the
/// station's minimum elevation, and terrestrial links from core-attached
/// stations to the core node.
IslGraph build_isl_grid(const ConstellationConfig& layout, std::span<const SatelliteState> states,
                        std::span<const GroundStation> ground_stations,
                        const TopologyParams& params, double t);

struct Path {
  std::vector<NodeId> nodes;
  double total_ms = 0.0;

  std::size_t hops() const { return nodes.empty() ? 0 : nodes.size() - 1; }
};

/// Minimum-delay path; ties go to the lexicographically smallest node
/// sequence. Ground stations relay only between a satellite and the core,
/// and the core never relays. nullopt when unreachable.
std::optional<Path> min_delay_path(const IslGraph& graph, NodeId src, NodeId dst);

/// Minimum-delay path from `src` to whichever of `targets` is nearest.
std::optional<Path> min_delay_path_to_any(const IslGraph& graph, NodeId src,
                                          std::span<const NodeId> targets);

/// Path from a satellite to the anchor a scheme reports to: the core (NTN),
/// the nearest ground station (NTN-GS) or the nearest core-hosting
/// satellite (NTN-SMN). Throws std::invalid_argument for Scheme::Proposed.
std::optional<Path> core_attachment_path(const IslGraph& graph, SatId sat, Scheme scheme);

}  // namespace leoho
