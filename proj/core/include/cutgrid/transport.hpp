#pragma once

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace cutgrid {

using Bytes = std::vector<uint8_t>;

enum class MsgKind : uint8_t { kGather, kScatter, kSendRecv };

const char* to_string(MsgKind kind);

struct TraceRecord {
  std::string phase;
  MsgKind kind;
  int src = -1;
  int dst = -1;
  size_t bytes = 0;
};

// Message-passing surface of the two-level protocol: S fine ranks plus one
// coarse rank. A real MPI backend can slot in behind this interface without
// touching protocol code.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual int rank() const = 0;
  virtual int fine_count() const = 0;           // S
  int coarse_rank() const { return fine_count(); }
  bool is_coarse() const { return rank() == coarse_rank(); }

  // Fine ranks contribute one payload; the coarse rank receives all S,
  // ordered by source rank (its own payload argument is ignored).
  virtual std::vector<Bytes> gather(const std::string& phase, const Bytes& payload) = 0;
  // The coarse rank provides S payloads; each fine rank receives its own.
  virtual Bytes scatter(const std::string& phase, const std::vector<Bytes>& payloads) = 0;
  // Symmetric pairwise exchange with a face-neighbor rank.
  virtual Bytes sendrecv(const std::string& phase, int peer, const Bytes& payload) = 0;

  // Per-rank event log, used to verify the overlap contract.
  virtual void log_event(const std::string& event) = 0;
};

// In-process deterministic world: one task per rank on its own thread,
// blocking exchanges, trace canonically ordered by (phase, kind, src, dst).
class SimWorld {
 public:
  explicit SimWorld(int fine_count);

  // Runs program(rank, transport) for ranks 0..S (rank S is coarse) and
  // blocks until all complete. Detects all-blocked deadlocks.
  void run(const std::function<void(int, Transport&)>& program);

  const std::vector<TraceRecord>& trace() const { return trace_; }
  const std::vector<std::vector<std::string>>& event_logs() const { return events_; }

  // Line-delimited export: phase kind src dst bytes.
  std::string trace_text() const;

 private:
  friend class SimTransport;
  friend struct SimWorldAccess;

  int fine_count_;
  std::mutex mutex_;
  std::condition_variable cv_;
  int running_ = 0;
  bool deadlock_ = false;
  // Threads blocked in an exchange, with their wake conditions. A deadlock is
  // declared only when every running thread is registered here and none of
  // the conditions holds (a satisfied-but-unscheduled waiter is not stuck).
  struct Waiter {
    const std::function<bool()>* ready;
    std::string what;
  };
  std::vector<Waiter> waiters_;
  std::map<std::string, std::vector<std::optional<Bytes>>> gathers_;
  std::map<std::string, std::vector<std::optional<Bytes>>> scatters_;
  std::map<std::string, std::map<std::pair<int, int>, std::array<std::optional<Bytes>, 2>>> exchanges_;
  std::vector<TraceRecord> trace_;
  std::vector<std::vector<std::string>> events_;
};

}  // namespace cutgrid
