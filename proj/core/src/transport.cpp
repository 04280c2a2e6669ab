#include "cutgrid/transport.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <thread>

#include "cutgrid/errors.hpp"

namespace cutgrid {

const char* to_string(MsgKind kind) {
  switch (kind) {
    case MsgKind::kGather: return "gather";
    case MsgKind::kScatter: return "scatter";
    default: return "sendrecv";
  }
}

class SimTransport final : public Transport {
 public:
  SimTransport(SimWorld& world, int rank) : world_(world), rank_(rank) {}

  int rank() const override { return rank_; }
  int fine_count() const override;

  std::vector<Bytes> gather(const std::string& phase, const Bytes& payload) override;
  Bytes scatter(const std::string& phase, const std::vector<Bytes>& payloads) override;
  Bytes sendrecv(const std::string& phase, int peer, const Bytes& payload) override;
  void log_event(const std::string& event) override;

 private:
  SimWorld& world_;
  int rank_;
};

// Definitions need SimWorld internals; keep them here as member-like helpers.
struct SimWorldAccess {
  static void wait(SimWorld& w, std::unique_lock<std::mutex>& lock,
                   const std::function<bool()>& ready, const std::string& what) {
    w.waiters_.push_back({&ready, what});
    auto unregister = [&] {
      auto it = std::find_if(w.waiters_.begin(), w.waiters_.end(),
                             [&](const auto& wt) { return wt.ready == &ready; });
      if (it != w.waiters_.end()) w.waiters_.erase(it);
    };
    for (;;) {
      if (ready()) break;
      // All running threads are registered as waiters; the world is stuck
      // only if no waiter's wake condition holds (one may be satisfied but
      // not yet scheduled).
      bool stuck = int(w.waiters_.size()) == w.running_;
      if (stuck)
        for (const auto& wt : w.waiters_)
          if ((*wt.ready)()) {
            stuck = false;
            break;
          }
      if (stuck && !w.deadlock_) {
        w.deadlock_ = true;
        w.cv_.notify_all();
      }
      if (w.deadlock_) {
        unregister();
        std::string snapshot;
        for (const auto& wt : w.waiters_) snapshot += " " + wt.what;
        throw ProtocolError("deadlock: all ranks blocked on: " + what + snapshot);
      }
      w.cv_.wait(lock);
    }
    unregister();
  }
};

int SimTransport::fine_count() const { return world_.fine_count_; }

std::vector<Bytes> SimTransport::gather(const std::string& phase, const Bytes& payload) {
  SimWorld& w = world_;
  std::unique_lock<std::mutex> lock(w.mutex_);
  auto& slots = w.gathers_[phase];
  if (slots.empty()) slots.resize(size_t(w.fine_count_));

  if (rank_ != fine_count()) {
    slots[size_t(rank_)] = payload;
    w.cv_.notify_all();
    return {};
  }
  SimWorldAccess::wait(w, lock, [&] {
    return std::all_of(slots.begin(), slots.end(),
                       [](const auto& s) { return s.has_value(); });
  }, phase + ":gather@coarse");
  std::vector<Bytes> out;
  for (int s = 0; s < w.fine_count_; ++s) {
    w.trace_.push_back({phase, MsgKind::kGather, s, fine_count(), slots[size_t(s)]->size()});
    out.push_back(*slots[size_t(s)]);
  }
  return out;
}

Bytes SimTransport::scatter(const std::string& phase, const std::vector<Bytes>& payloads) {
  SimWorld& w = world_;
  std::unique_lock<std::mutex> lock(w.mutex_);
  auto& slots = w.scatters_[phase];
  if (slots.empty()) slots.resize(size_t(w.fine_count_));

  if (rank_ == fine_count()) {
    if (int(payloads.size()) != w.fine_count_)
      throw ProtocolError(phase + ": scatter payload count != fine rank count");
    for (int s = 0; s < w.fine_count_; ++s) {
      slots[size_t(s)] = payloads[size_t(s)];
      w.trace_.push_back({phase, MsgKind::kScatter, fine_count(), s, payloads[size_t(s)].size()});
    }
    w.cv_.notify_all();
    return {};
  }
  SimWorldAccess::wait(w, lock, [&] { return slots[size_t(rank_)].has_value(); },
                       phase + ":scatter@" + std::to_string(rank_));
  return *slots[size_t(rank_)];
}

Bytes SimTransport::sendrecv(const std::string& phase, int peer, const Bytes& payload) {
  SimWorld& w = world_;
  std::unique_lock<std::mutex> lock(w.mutex_);
  auto key = std::make_pair(std::min(rank_, peer), std::max(rank_, peer));
  auto& pair_slots = w.exchanges_[phase][key];
  const int mine = rank_ == key.first ? 0 : 1;
  pair_slots[size_t(mine)] = payload;
  if (pair_slots[0] && pair_slots[1]) {
    // Second arrival records the exchange, lower source first.
    w.trace_.push_back({phase, MsgKind::kSendRecv, key.first, key.second,
                        pair_slots[0]->size()});
    w.trace_.push_back({phase, MsgKind::kSendRecv, key.second, key.first,
                        pair_slots[1]->size()});
  }
  w.cv_.notify_all();
  SimWorldAccess::wait(w, lock, [&] { return pair_slots[size_t(1 - mine)].has_value(); },
                       phase + ":sendrecv@" + std::to_string(rank_) + "<->" +
                           std::to_string(peer));
  return *pair_slots[size_t(1 - mine)];
}

void SimTransport::log_event(const std::string& event) {
  std::lock_guard<std::mutex> lock(world_.mutex_);
  world_.events_[size_t(rank_)].push_back(event);
}

SimWorld::SimWorld(int fine_count) : fine_count_(fine_count) {
  events_.resize(size_t(fine_count + 1));
}

void SimWorld::run(const std::function<void(int, Transport&)>& program) {
  const int world_size = fine_count_ + 1;
  running_ = world_size;
  std::vector<std::exception_ptr> errors{size_t(world_size)};
  std::vector<std::thread> threads;
  threads.reserve(size_t(world_size));
  for (int r = 0; r < world_size; ++r) {
    threads.emplace_back([&, r] {
      SimTransport transport(*this, r);
      try {
        program(r, transport);
      } catch (...) {
        errors[size_t(r)] = std::current_exception();
      }
      std::lock_guard<std::mutex> lock(mutex_);
      running_--;
      cv_.notify_all();
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  // Canonical delivery order.
  std::stable_sort(trace_.begin(), trace_.end(), [](const TraceRecord& a, const TraceRecord& b) {
    return std::tie(a.phase, a.kind, a.src, a.dst) < std::tie(b.phase, b.kind, b.src, b.dst);
  });
}

std::string SimWorld::trace_text() const {
  std::ostringstream out;
  for (const TraceRecord& r : trace_)
    out << r.phase << " " << to_string(r.kind) << " " << r.src << " " << r.dst
        << " " << r.bytes << "\n";
  return out.str();
}

}  // namespace cutgrid
