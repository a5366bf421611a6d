#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "vas/dataset.hpp"
#include "vas/error.hpp"
#include "vas/geometry.hpp"
#include "vas/spatial_index.hpp"

namespace vas {

/// How a candidate point is tested against the current sample.
///  - NoES:  tries every single replacement, O(K^2) kernel calls per point.
///  - ES:    expand to K+1 then evict the max-responsibility entry, O(K).
///  - ESLoc: ES restricted to pairs within the cutoff radius via a grid index.
enum class InterchangeMode { NoES, ES, ESLoc };

inline const char* to_string(InterchangeMode m) {
  switch (m) {
    case InterchangeMode::NoES: return "noes";
    case InterchangeMode::ES: return "es";
    case InterchangeMode::ESLoc: return "esloc";
  }
  return "unknown";
}

inline std::optional<InterchangeMode> parse_interchange_mode(std::string_view s) {
  if (s == "noes") return InterchangeMode::NoES;
  if (s == "es") return InterchangeMode::ES;
  if (s == "esloc") return InterchangeMode::ESLoc;
  return std::nullopt;
}

/// One sample member. `rsp` is the unhalved responsibility, the sum of pair
/// weights to every other member. `seq` orders insertions.
struct ResponsibilityEntry {
  Point2D point;
  std::size_t source_index = 0;
  double rsp = 0.0;
  std::uint64_t seq = 0;
};

/*
 * The sample state of the Interchange local search: at most K+1 entries, each
 * carrying its responsibility. Storage is a fixed pool of K+1 slots, and a
 * slot number doubles as the spatial-index id in ESLoc mode.
 *
 * The tracked objective is the pair sum over the current members (for ESLoc,
 * only over pairs within the cutoff radius). Sum of rsp equals twice that.
 */
class ResponsibilitySet {
 public:
  ResponsibilitySet(std::size_t k, KernelParams params, InterchangeMode mode)
      : k_(k), params_(params), mode_(mode), slots_(k + 1), alive_(k + 1, false), saved_rsp_(k + 1, 0.0) {
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "K must be >= 1");
    free_.reserve(k + 1);
    for (std::size_t s = k + 1; s-- > 0;) free_.push_back(s);
    if (mode_ == InterchangeMode::ESLoc) index_.emplace(params_.cutoff_radius());
  }

  std::size_t capacity() const { return k_; }
  std::size_t size() const { return size_; }
  InterchangeMode mode() const { return mode_; }
  const KernelParams& params() const { return params_; }
  double objective() const { return pair_sum_; }

  /// Live entries in slot order.
  std::vector<ResponsibilityEntry> entries() const {
    std::vector<ResponsibilityEntry> out;
    out.reserve(size_);
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      if (alive_[s]) out.push_back(slots_[s]);
    }
    return out;
  }

  /// Inserts t with rsp = sum of pair weights to the current members and
  /// raises every member's rsp by its weight to t.
  void expand(const Point2D& t, std::size_t source_index) {
    if (size_ > k_) throw Error(ErrorCode::InvalidArgument, "expand on a set already holding K+1 entries");
    saved_pair_sum_ = pair_sum_;
    touched_.clear();
    double total = 0.0;
    auto add = [&](std::size_t s) {
      const double l = weight(t, slots_[s].point);
      touched_.push_back(s);
      saved_rsp_[s] = slots_[s].rsp;
      set_rsp(s, slots_[s].rsp + l);
      total += l;
    };
    if (index_) {
      index_->for_each_within(t, params_.cutoff_radius(), [&](std::size_t s, const Point2D&) { add(s); });
    } else {
      for (std::size_t s = 0; s < slots_.size(); ++s) {
        if (alive_[s]) add(s);
      }
    }
    newest_ = place({t, source_index, total, next_seq_++});
    pair_sum_ += total;
    maybe_compact();
  }

  /// Removes the entry with the largest rsp and lowers the others by their
  /// weight to it. Ties evict the most recently inserted entry, and so does
  /// any swap that would not lower the stored objective once rounded.
  /// Returns the evicted entry.
  ResponsibilityEntry shrink() {
    if (size_ != k_ + 1) throw Error(ErrorCode::InvalidArgument, "shrink requires exactly K+1 entries");
    const std::size_t victim = pick_victim();
    ResponsibilityEntry gone = slots_[victim];

    if (victim == newest_) {
      // Exact undo of the preceding expand.
      for (auto s : touched_) set_rsp(s, saved_rsp_[s]);
      pair_sum_ = saved_pair_sum_;
      release(victim);
    } else {
      const double r_new = slots_[newest_].rsp;
      release(victim);
      auto sub = [&](std::size_t s) { set_rsp(s, slots_[s].rsp - weight(gone.point, slots_[s].point)); };
      if (index_) {
        index_->for_each_within(gone.point, params_.cutoff_radius(), [&](std::size_t s, const Point2D&) { sub(s); });
      } else {
        for (std::size_t s = 0; s < slots_.size(); ++s) {
          if (alive_[s]) sub(s);
        }
      }
      pair_sum_ = saved_pair_sum_ - (gone.rsp - r_new);
    }
    newest_ = kNone;
    touched_.clear();
    maybe_compact();
    return gone;
  }

  /// Offers t to a full set; returns true iff t replaced a member.
  bool step(const Point2D& t, std::size_t source_index) {
    if (size_ != k_) throw Error(ErrorCode::InvalidArgument, "step requires exactly K entries");
    if (mode_ == InterchangeMode::NoES) return step_naive(t, source_index);
    expand(t, source_index);
    const std::uint64_t seq = next_seq_ - 1;
    return shrink().seq != seq;
  }

  /// Recomputes every rsp from scratch; returns the largest deviation of a
  /// stored value from its fresh value, relative to max(1, fresh).
  double recompute() {
    double drift = 0.0;
    double total = 0.0;
    std::vector<double> fresh(slots_.size(), 0.0);
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      if (!alive_[s]) continue;
      auto add = [&](std::size_t o) {
        if (o != s) fresh[s] += weight(slots_[s].point, slots_[o].point);
      };
      if (index_) {
        index_->for_each_within(slots_[s].point, params_.cutoff_radius(), [&](std::size_t o, const Point2D&) { add(o); });
      } else {
        for (std::size_t o = 0; o < slots_.size(); ++o) {
          if (alive_[o]) add(o);
        }
      }
    }
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      if (!alive_[s]) continue;
      drift = std::max(drift, std::abs(slots_[s].rsp - fresh[s]) / std::max(1.0, fresh[s]));
      set_rsp(s, fresh[s]);
      total += fresh[s];
    }
    pair_sum_ = 0.5 * total;
    newest_ = kNone;
    touched_.clear();
    maybe_compact();
    return drift;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  struct HeapItem {
    double rsp;
    std::uint64_t seq;
    std::size_t slot;
    friend bool operator<(const HeapItem& a, const HeapItem& b) {
      return a.rsp < b.rsp || (a.rsp == b.rsp && a.seq < b.seq);
    }
  };

  double weight(const Point2D& a, const Point2D& b) const {
    if (index_ && squared_distance(a, b) > params_.cutoff_radius() * params_.cutoff_radius()) return 0.0;
    return kappa_tilde(a, b, params_);
  }

  void set_rsp(std::size_t s, double r) {
    slots_[s].rsp = r;
    if (index_) push(s);
  }

  std::size_t place(const ResponsibilityEntry& e) {
    const std::size_t s = free_.back();
    free_.pop_back();
    slots_[s] = e;
    alive_[s] = true;
    ++size_;
    if (index_) {
      index_->insert(s, e.point);
      push(s);
    }
    return s;
  }

  void release(std::size_t s) {
    if (index_) index_->remove(s);
    alive_[s] = false;
    free_.push_back(s);
    --size_;
  }

  static bool beats(const ResponsibilityEntry& a, const ResponsibilityEntry& b) {
    return a.rsp > b.rsp || (a.rsp == b.rsp && a.seq > b.seq);
  }

  bool current(const HeapItem& h) const {
    return alive_[h.slot] && slots_[h.slot].seq == h.seq && slots_[h.slot].rsp == h.rsp;
  }

  void push(std::size_t s) {
    heap_.push_back({slots_[s].rsp, slots_[s].seq, s});
    std::push_heap(heap_.begin(), heap_.end());
  }

  void pop() {
    std::pop_heap(heap_.begin(), heap_.end());
    heap_.pop_back();
  }

  void maybe_compact() {
    if (!index_ || heap_.size() <= 4 * slots_.size() + 64) return;
    heap_.clear();
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      if (alive_[s]) heap_.push_back({slots_[s].rsp, slots_[s].seq, s});
    }
    std::make_heap(heap_.begin(), heap_.end());
  }

  std::size_t pick_victim() {
    std::size_t best = kNone;
    if (index_) {
      bool held_newest = false;
      while (!heap_.empty()) {
        const HeapItem top = heap_.front();
        if (!current(top) || top.slot == newest_) {
          held_newest = held_newest || (current(top) && top.slot == newest_);
          pop();
          continue;
        }
        best = top.slot;
        break;
      }
      if (held_newest) push(newest_);
    } else {
      for (std::size_t s = 0; s < slots_.size(); ++s) {
        if (!alive_[s] || s == newest_) continue;
        if (best == kNone || beats(slots_[s], slots_[best])) best = s;
      }
    }
    if (newest_ == kNone) return best;
    if (best == kNone) return newest_;
    const double r_new = slots_[newest_].rsp;
    const double r_old = slots_[best].rsp;
    return r_old > r_new && saved_pair_sum_ - (r_old - r_new) < saved_pair_sum_ ? best : newest_;
  }

  // Tries t in place of every member, recomputing t's responsibility in each
  // candidate set from scratch. Picks the same member Expand/Shrink would.
  bool step_naive(const Point2D& t, std::size_t source_index) {
    std::size_t best = kNone;
    double best_gain = 0.0;
    double best_cand = 0.0;
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      if (!alive_[i]) continue;
      double cand = 0.0;
      for (std::size_t j = 0; j < slots_.size(); ++j) {
        if (alive_[j] && j != i) cand += weight(t, slots_[j].point);
      }
      const double gain = slots_[i].rsp - cand;
      if (best == kNone || gain > best_gain || (gain == best_gain && slots_[i].seq > slots_[best].seq)) {
        best = i;
        best_gain = gain;
        best_cand = cand;
      }
    }
    if (!(best_gain > 0.0 && pair_sum_ - best_gain < pair_sum_)) return false;

    const ResponsibilityEntry gone = slots_[best];
    release(best);
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      if (alive_[s]) set_rsp(s, slots_[s].rsp - weight(gone.point, slots_[s].point) + weight(t, slots_[s].point));
    }
    place({t, source_index, best_cand, next_seq_++});
    pair_sum_ -= best_gain;
    newest_ = kNone;
    return true;
  }

  std::size_t k_;
  KernelParams params_;
  InterchangeMode mode_;
  std::vector<ResponsibilityEntry> slots_;
  std::vector<bool> alive_;
  std::vector<std::size_t> free_;
  std::size_t size_ = 0;
  std::uint64_t next_seq_ = 0;
  double pair_sum_ = 0.0;

  // Undo log for the most recent expand.
  std::size_t newest_ = kNone;
  std::vector<std::size_t> touched_;
  std::vector<double> saved_rsp_;
  double saved_pair_sum_ = 0.0;

  std::optional<GridIndex> index_;
  // ESLoc max structure: a lazy max-heap. Every rsp change pushes a fresh
  // item; items that no longer match their slot are dropped when they
  // surface, and the heap is rebuilt once stale items dominate.
  std::vector<HeapItem> heap_;
};

struct InterchangeConfig {
  std::size_t k = 1;
  std::size_t passes = 1;
  std::uint64_t seed = 0;
  bool shuffle = true;
  InterchangeMode mode = InterchangeMode::ESLoc;
  std::size_t recompute_interval = 100000;
  std::optional<double> time_budget_secs;
};

struct RunStats {
  std::size_t points_seen = 0;
  std::size_t replacements = 0;
  std::size_t passes_run = 0;
  double final_objective = 0.0;
  double max_drift = 0.0;
  double wall_time = 0.0;
  bool converged = false;
};

struct StepEvent {
  std::size_t step = 0;
  bool replaced = false;
  double objective = 0.0;
};

/// Optional observation points for tests and diagnostics.
struct InterchangeHooks {
  std::function<void(const StepEvent&)> on_step;
  std::function<void(double drift, double objective)> on_recompute;  // objective after the refresh
};

/// Seeded Fisher-Yates permutation of 0..n-1.
inline std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(order[i - 1], order[pick(rng)]);
  }
  return order;
}

struct InterchangeResult {
  Sample sample;
  RunStats stats;
};

/*
 * Streams the dataset through a ResponsibilitySet. The first K points of the
 * (optionally shuffled) stream seed the sample; every later point is offered
 * through step(). Further passes replay the same order, skipping points that
 * are already members, and stop early after a pass without replacements.
 *
 * The returned sample lists members by ascending dataset index.
 */
inline InterchangeResult run_interchange(const Dataset& data, const InterchangeConfig& cfg, const KernelParams& params,
                                         const InterchangeHooks& hooks = {}) {
  if (data.empty()) throw Error(ErrorCode::EmptyDataset, "dataset is empty");
  if (cfg.k == 0 || cfg.passes == 0 || cfg.recompute_interval == 0) {
    throw Error(ErrorCode::InvalidArgument, "K, passes and recompute_interval must be >= 1");
  }
  if (cfg.k > data.size()) {
    throw Error(ErrorCode::KTooLarge,
                "K = " + std::to_string(cfg.k) + " exceeds dataset size " + std::to_string(data.size()));
  }

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto out_of_time = [&] {
    return cfg.time_budget_secs &&
           std::chrono::duration<double>(Clock::now() - start).count() >= *cfg.time_budget_secs;
  };

  std::vector<std::size_t> order;
  if (cfg.shuffle) {
    order = seeded_permutation(data.size(), cfg.seed);
  } else {
    order.resize(data.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  }

  ResponsibilitySet state(cfg.k, params, cfg.mode);
  std::vector<bool> member(data.size(), false);
  RunStats stats;
  std::size_t steps = 0;
  std::size_t since_recompute = 0;
  bool stopped = false;

  for (std::size_t pass = 0; pass < cfg.passes && !stopped; ++pass) {
    std::size_t pass_replacements = 0;
    for (auto idx : order) {
      if (member[idx]) continue;
      ++stats.points_seen;
      if (state.size() < cfg.k) {
        state.expand(data.points[idx], idx);
        member[idx] = true;
        continue;
      }
      state.expand(data.points[idx], idx);
      const ResponsibilityEntry gone = state.shrink();
      const bool replaced = gone.source_index != idx;
      if (replaced) {
        member[gone.source_index] = false;
        member[idx] = true;
        ++pass_replacements;
      }
      ++steps;
      if (hooks.on_step) hooks.on_step({steps, replaced, state.objective()});
      if (++since_recompute >= cfg.recompute_interval) {
        since_recompute = 0;
        const double drift = state.recompute();
        stats.max_drift = std::max(stats.max_drift, drift);
        if (hooks.on_recompute) hooks.on_recompute(drift, state.objective());
      }
      if ((steps & 1023u) == 0 && out_of_time()) {
        stopped = true;
        break;
      }
    }
    stats.replacements += pass_replacements;
    ++stats.passes_run;
    if (!stopped && pass_replacements == 0) {
      stats.converged = true;
      break;
    }
  }

  stats.max_drift = std::max(stats.max_drift, state.recompute());
  stats.final_objective = state.objective();

  std::vector<std::size_t> indices;
  indices.reserve(cfg.k);
  for (const auto& e : state.entries()) indices.push_back(e.source_index);
  std::sort(indices.begin(), indices.end());
  stats.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return {make_sample(data, std::move(indices), SampleMethod::Vas), stats};
}

}  // namespace vas
