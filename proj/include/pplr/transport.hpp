#pragma once

// In-process message fabric for simulated parties.
//
// Every ordered pair of endpoints has its own FIFO link. recv() takes the
// oldest message on the link whose round tag matches, so concurrent rounds
// with different tags never steal each other's payloads.
//
// Parties are run on their own threads through Transport::run(). In the
// default cooperative mode only one party executes at a time and control
// passes round-robin whenever the running party blocks in recv() or
// finishes; this keeps wall-clock figures equal to total compute. The
// concurrent mode lets all party threads run freely. Both modes detect a
// global deadlock (every live party waiting on an empty link) and fail all
// waiters with DeadlockError.

#include <bit>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "pplr/error.hpp"
#include "pplr/sharing.hpp"

namespace pplr::net {

using Payload = std::vector<std::byte>;

struct Message {
  PartyId from;
  PartyId to;
  std::string round_tag;
  Payload payload;
};

struct LinkCounters {
  std::uint64_t messages = 0;
  std::uint64_t bytes = 0;
  friend bool operator==(const LinkCounters&, const LinkCounters&) = default;
};

struct ChannelStats {
  std::uint64_t messages_sent = 0;
  std::uint64_t bytes_sent = 0;
  /// Keyed by (from, to) endpoint indices.
  std::map<std::pair<std::uint32_t, std::uint32_t>, LinkCounters> per_link;

  std::uint64_t messages_from(std::uint32_t party) const;
  std::uint64_t bytes_from(std::uint32_t party) const;
  /// Counters restricted to links whose endpoints are both in [0, n).
  LinkCounters among_first(std::uint32_t n) const;
  friend bool operator==(const ChannelStats&, const ChannelStats&) = default;
};

/// Difference of two snapshots of the same transport (later - earlier).
ChannelStats operator-(const ChannelStats& later, const ChannelStats& earlier);

enum class SchedulingMode { kCooperative, kConcurrent };

class Transport {
 public:
  explicit Transport(std::size_t n_endpoints,
                     SchedulingMode mode = SchedulingMode::kCooperative);

  Transport(const Transport&) = delete;
  Transport& operator=(const Transport&) = delete;

  std::size_t endpoints() const noexcept { return n_; }
  SchedulingMode mode() const noexcept { return mode_; }

  void send(PartyId from, PartyId to, std::string round_tag, Payload payload);
  Payload recv(PartyId at, PartyId from, std::string_view round_tag);

  ChannelStats snapshot_stats() const;

  /// Runs each body on its own thread as the given endpoint and returns
  /// once all have finished. The first failure is rethrown after the other
  /// bodies are released (they see ProtocolError on their next recv).
  void run(std::vector<std::pair<PartyId, std::function<void()>>> bodies);

 private:
  enum class State { kReady, kBlocked, kDone };
  struct Slot {
    PartyId id;
    State state = State::kReady;
    PartyId waiting_from;
    std::string waiting_tag;
  };

  void check_endpoint(PartyId p, const char* role) const;
  std::deque<Message>& link(PartyId from, PartyId to);
  bool has_message(PartyId at, PartyId from, std::string_view tag) const;
  Payload take_message(PartyId at, PartyId from, std::string_view tag);
  Slot* slot_of(PartyId id);
  // Both expect mu_ held.
  void hand_over(std::size_t from_slot);
  bool any_runnable_locked() const;
  bool slot_runnable(const Slot& s) const;

  const std::size_t n_;
  const SchedulingMode mode_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::vector<std::deque<Message>> links_;  // index from * n + to
  ChannelStats stats_;

  bool running_ = false;
  bool deadlocked_ = false;
  bool aborted_ = false;
  std::vector<Slot> slots_;
  std::size_t current_ = 0;  // cooperative baton
};

// Little-endian fixed-width payload encoding: 8 bytes per element for both
// ring elements and doubles, so byte counts are predictable.
static_assert(std::endian::native == std::endian::little,
              "payload encoding assumes a little-endian host");

template <class T>
Payload to_payload(std::span<const T> values) {
  static_assert(sizeof(T) == 8 && std::is_trivially_copyable_v<T>);
  Payload out(values.size() * sizeof(T));
  if (!values.empty()) std::memcpy(out.data(), values.data(), out.size());
  return out;
}

template <class T>
std::vector<T> from_payload(const Payload& bytes) {
  static_assert(sizeof(T) == 8 && std::is_trivially_copyable_v<T>);
  if (bytes.size() % sizeof(T) != 0) {
    throw ProtocolError("payload length is not a multiple of the element size");
  }
  std::vector<T> out(bytes.size() / sizeof(T));
  if (!out.empty()) std::memcpy(out.data(), bytes.data(), bytes.size());
  return out;
}

}  // namespace pplr::net
