#pragma once

#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fedslice/messages.hpp"
#include "fedslice/result.hpp"
#include "fedslice/trace.hpp"

namespace fedslice {

class Kernel;

// Passive message handler. The kernel serializes all delivery, so handlers
// never see concurrent calls.
class Actor {
 public:
  virtual ~Actor() = default;
  virtual std::string name() const = 0;
  virtual void handle(Kernel& k, const Message& m) = 0;
  // Invoked once per tick after that tick's messages, in registration order.
  virtual void on_tick(Kernel& k, Tick t) { (void)k; (void)t; }
};

// Deterministic discrete-event engine: logical clock in ticks, typed
// message bus, ordered trace recorder. Messages scheduled for the same tick
// deliver in (sender, enqueue seq) order, so per-sender FIFO holds and
// cross-sender ordering is fixed by sender id.
class Kernel {
 public:
  explicit Kernel(std::uint64_t seed = 0) : rng_(seed) {}

  void register_actor(Actor* a) {
    actors_[a->name()] = a;
    tick_order_.push_back(a);
  }

  bool has_actor(const std::string& name) const { return actors_.count(name) > 0; }

  void set_arrow_latency(const std::string& sender_stratum, const std::string& receiver_stratum, Tick d) {
    arrow_latency_[sender_stratum + "->" + receiver_stratum] = d;
  }
  void set_default_arrow_latency(Tick d) { default_latency_ = d; }

  Tick now() const { return now_; }
  std::mt19937_64& rng() { return rng_; }

  // Enqueue with explicit delay. Delay 0 delivers within the current tick.
  Result<std::int64_t> post(Message m, Tick delay) {
    if (delay < 0) return make_error(Errc::malformed_message, "negative delay");
    return enqueue(std::move(m), now_ + delay);
  }

  // Enqueue with the configured per-arrow latency for the stratum pair.
  Result<std::int64_t> post(Message m) {
    auto it = arrow_latency_.find(stratum_of(m.sender) + "->" + stratum_of(m.receiver));
    Tick d = it == arrow_latency_.end() ? default_latency_ : it->second;
    return enqueue(std::move(m), now_ + d);
  }

  // Absolute-tick scheduling, used for timeline injections.
  Result<std::int64_t> post_at(Message m, Tick tick) {
    if (tick < now_) return make_error(Errc::malformed_message, "tick in the past");
    return enqueue(std::move(m), tick);
  }

  // State transitions recorded by whoever mutates a record during handling.
  void note_transition(const std::string& entity, const std::string& from, const std::string& to) {
    pending_transitions_.push_back({entity, from, to});
  }
  // Ledger deltas arrive via the substrate observer.
  void note_delta(const LedgerDelta& d) { pending_deltas_.push_back(d); }

  // Processes ticks until no messages remain or the budget runs out.
  // Returns the final tick; sets tick_budget_exhausted() when cut short.
  Tick run_until_quiescent(Tick max_ticks) {
    exhausted_ = false;
    while (true) {
      deliver_tick();
      if (exhausted_) break;
      // Index loop: handlers may register new actors while we iterate.
      for (std::size_t i = 0; i < tick_order_.size(); ++i) tick_order_[i]->on_tick(*this, now_);
      if (queue_.empty()) break;
      if (now_ >= max_ticks) {
        exhausted_ = true;
        break;
      }
      ++now_;
    }
    trace_.final_tick = now_;
    trace_.quiescent = !exhausted_;
    return now_;
  }

  bool tick_budget_exhausted() const { return exhausted_; }
  Trace& trace() { return trace_; }
  const Trace& trace() const { return trace_; }

 private:
  struct Queued {
    Tick tick;
    std::string sender;
    std::int64_t seq;
    Message msg;
    bool operator<(const Queued& o) const {
      if (tick != o.tick) return tick < o.tick;
      if (sender != o.sender) return sender < o.sender;
      return seq < o.seq;
    }
  };

  Result<std::int64_t> enqueue(Message m, Tick tick) {
    const auto& shape = payload_shape(m.kind);
    for (const auto& field : shape)
      if (!m.payload.contains(field))
        return make_error(Errc::malformed_message,
                          std::string(kind_name(m.kind)) + " payload missing " + field);
    m.seq = ++seq_;
    m.tick = tick;
    queue_.insert(Queued{tick, m.sender, m.seq, m});
    return m.seq;
  }

  void deliver_tick() {
    // 1e6 deliveries per tick guards against same-tick message loops.
    std::int64_t safety = 1000000;
    while (!queue_.empty() && queue_.begin()->tick == now_ && safety-- > 0) {
      Message m = queue_.begin()->msg;
      queue_.erase(queue_.begin());
      auto it = actors_.find(m.receiver);
      pending_transitions_.clear();
      pending_deltas_.clear();
      if (it != actors_.end()) it->second->handle(*this, m);
      TraceEvent ev;
      ev.seq = ++trace_seq_;
      ev.msg = m;
      ev.transitions = pending_transitions_;
      ev.deltas = pending_deltas_;
      trace_.events.push_back(std::move(ev));
    }
    if (safety <= 0) exhausted_ = true;
  }

  std::map<std::string, Actor*> actors_;
  std::vector<Actor*> tick_order_;
  std::set<Queued> queue_;
  std::map<std::string, Tick> arrow_latency_;
  Tick default_latency_ = 1;
  Tick now_ = 0;
  std::int64_t seq_ = 0;
  std::int64_t trace_seq_ = 0;
  bool exhausted_ = false;
  Trace trace_;
  std::mt19937_64 rng_;
  std::vector<StateTransition> pending_transitions_;
  std::vector<LedgerDelta> pending_deltas_;
};

}  // namespace fedslice
