#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>

#include "leoho/prediction.hpp"

namespace leoho {

/// What the UPF knows about a UE: identity, last reported location and
/// access strategy.
struct UserInfo {
  UeId ue_id = 0;
  GeodeticPoint position;
  AccessStrategy strategy;
};

/// One row of the UPF-side UE/satellite table.
struct SyncEntry {
  UserInfo user;
  std::optional<SatId> access_sat;       // serving satellite at T
  std::optional<SatId> next_access_sat;  // serving satellite at T + delta_t
  double t_p = 0.0;                      // predicted trigger time, 0 when unchanged
  std::uint64_t tunnel_ref = 0;          // tunnel id of access_sat
};

struct SyncTable {
  double T = 0.0;
  double delta_t = 5.0;
  std::map<UeId, SyncEntry> rows;
};

/// Thrown when an operation's precondition on the table does not hold.
class SyncContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct SyncContext {
  PredictionContext prediction;
  int iterations = 9;
};

/// Per-satellite tunnel identifier carried in downlink headers.
std::uint64_t tunnel_for(SatId sat);

/// Access satellite of the UE as a function of time.
using AccessFn = std::function<std::optional<SatId>(double)>;

/// Bisects [t0, t1] `iterations` times on "access differs from access(t0)"
/// and returns the midpoint of the final bracket. Throws SyncContractError
/// when access(t0) == access(t1).
double binary_search_trigger(const AccessFn& access_at, double t0, double t1, int iterations = 9);

/// Access function for one UE seen from the core: candidates are taken from
/// the blocks around the UE at `t1`, widened by how far satellites move over
/// the window, and re-propagated at each probe.
AccessFn make_access_fn(const UserInfo& ue, std::optional<SatId> from,
                        const SatelliteSnapshot& at_t1, double window_s,
                        const PredictionContext& ctx);

/// Starts a table at T with no rows.
SyncTable make_sync_table(double T, double delta_t = 5.0);

/// Advances the table from T to t = T + delta_t. Access at t is the stored
/// next-access; access at t + delta_t is predicted; changed UEs get t_p by
/// binary search, and their access at t + delta_t is re-derived from the
/// satellite taken at the trigger. Throws SyncContractError on a wrong t and propagates
/// prediction errors; the input table is never modified.
SyncTable periodic_update(const SyncTable& table, double t, const SyncContext& ctx,
                          PredictionStats* stats = nullptr);
/// Same, reusing a snapshot already propagated to t + delta_t.
SyncTable periodic_update(const SyncTable& table, double t, const SyncContext& ctx,
                          const SatelliteSnapshot& at_horizon, PredictionStats* stats = nullptr);

enum class UeEventKind { Register, Deregister, Move };

/// Registration, deregistration or movement of one UE. Only that UE's row
/// changes. `known_access` pins the access satellite at T (the core learned
/// it from an NTN path switch) instead of recomputing it.
SyncTable on_ue_event(const SyncTable& table, const UserInfo& ue, UeEventKind kind,
                      const SyncContext& ctx, std::optional<SatId> known_access = {});
/// Same, with snapshots at T and T + delta_t supplied by the caller.
SyncTable on_ue_event(const SyncTable& table, const UserInfo& ue, UeEventKind kind,
                      const SyncContext& ctx, const SatelliteSnapshot& at_T,
                      const SatelliteSnapshot& at_horizon,
                      std::optional<SatId> known_access = {});
/// In-place form for the single writer that owns `table`.
void apply_ue_event(SyncTable& table, const UserInfo& ue, UeEventKind kind,
                    const SyncContext& ctx, const SatelliteSnapshot& at_T,
                    const SatelliteSnapshot& at_horizon, std::optional<SatId> known_access = {});

struct DownlinkRoute {
  SatId sat = 0;
  std::uint64_t tunnel_ref = 0;

  bool operator==(const DownlinkRoute&) const = default;
};

/// Next-access satellite once now >= t_p (t_p != 0), else the access
/// satellite; nullopt during a service gap. Throws std::out_of_range for an
/// unknown UE.
std::optional<DownlinkRoute> route_downlink(const SyncTable& table, UeId ue, double now);

/// Throws SyncContractError if any row breaks t_p == 0 <=> access == next or
/// has t_p outside [T, T + delta_t].
void check_invariants(const SyncTable& table);

/// Single-writer, many-reader holder. Readers get an immutable snapshot;
/// a publish swaps the whole table at once.
class SyncTableStore {
 public:
  explicit SyncTableStore(SyncTable initial = {})
      : current_(std::make_shared<const SyncTable>(std::move(initial))) {}

  std::shared_ptr<const SyncTable> load() const {
    std::lock_guard lock(mu_);
    return current_;
  }
  void publish(SyncTable next) {
    auto p = std::make_shared<const SyncTable>(std::move(next));
    std::lock_guard lock(mu_);
    current_ = std::move(p);
  }

 private:
  mutable std::mutex mu_;
  std::shared_ptr<const SyncTable> current_;
};

}  // namespace leoho
