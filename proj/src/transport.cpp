#include "pplr/transport.hpp"

#include <exception>
#include <thread>

namespace pplr::net {

std::uint64_t ChannelStats::messages_from(std::uint32_t party) const {
  std::uint64_t total = 0;
  for (const auto& [key, c] : per_link)
    if (key.first == party) total += c.messages;
  return total;
}

std::uint64_t ChannelStats::bytes_from(std::uint32_t party) const {
  std::uint64_t total = 0;
  for (const auto& [key, c] : per_link)
    if (key.first == party) total += c.bytes;
  return total;
}

LinkCounters ChannelStats::among_first(std::uint32_t n) const {
  LinkCounters total;
  for (const auto& [key, c] : per_link) {
    if (key.first < n && key.second < n) {
      total.messages += c.messages;
      total.bytes += c.bytes;
    }
  }
  return total;
}

ChannelStats operator-(const ChannelStats& later, const ChannelStats& earlier) {
  ChannelStats diff;
  diff.messages_sent = later.messages_sent - earlier.messages_sent;
  diff.bytes_sent = later.bytes_sent - earlier.bytes_sent;
  for (const auto& [key, c] : later.per_link) {
    LinkCounters d = c;
    if (auto it = earlier.per_link.find(key); it != earlier.per_link.end()) {
      d.messages -= it->second.messages;
      d.bytes -= it->second.bytes;
    }
    if (d.messages != 0 || d.bytes != 0) diff.per_link[key] = d;
  }
  return diff;
}

Transport::Transport(std::size_t n_endpoints, SchedulingMode mode)
    : n_(n_endpoints), mode_(mode), links_(n_endpoints * n_endpoints) {
  if (n_endpoints == 0) throw InvalidArgument("transport needs an endpoint");
}

void Transport::check_endpoint(PartyId p, const char* role) const {
  if (p.index >= n_) {
    throw InvalidArgument(std::string("unknown ") + role + " party " +
                          std::to_string(p.index));
  }
}

std::deque<Message>& Transport::link(PartyId from, PartyId to) {
  return links_[from.index * n_ + to.index];
}

bool Transport::has_message(PartyId at, PartyId from,
                            std::string_view tag) const {
  for (const auto& m : links_[from.index * n_ + at.index])
    if (m.round_tag == tag) return true;
  return false;
}

Payload Transport::take_message(PartyId at, PartyId from,
                                std::string_view tag) {
  auto& q = link(from, at);
  for (auto it = q.begin(); it != q.end(); ++it) {
    if (it->round_tag == tag) {
      Payload p = std::move(it->payload);
      q.erase(it);
      return p;
    }
  }
  throw ProtocolError("no message to take");  // unreachable by construction
}

void Transport::send(PartyId from, PartyId to, std::string round_tag,
                     Payload payload) {
  check_endpoint(from, "sending");
  check_endpoint(to, "receiving");
  if (from == to) throw InvalidArgument("a party cannot send to itself");
  if (payload.empty()) throw InvalidArgument("message payload must not be empty");
  {
    std::lock_guard lk(mu_);
    const std::uint64_t bytes = payload.size();
    stats_.messages_sent += 1;
    stats_.bytes_sent += bytes;
    auto& c = stats_.per_link[{from.index, to.index}];
    c.messages += 1;
    c.bytes += bytes;
    link(from, to).push_back({from, to, std::move(round_tag), std::move(payload)});
  }
  if (mode_ == SchedulingMode::kConcurrent) cv_.notify_all();
}

Transport::Slot* Transport::slot_of(PartyId id) {
  for (auto& s : slots_)
    if (s.id == id && s.state != State::kDone) return &s;
  return nullptr;
}

bool Transport::slot_runnable(const Slot& s) const {
  switch (s.state) {
    case State::kReady:
      return true;
    case State::kBlocked:
      return has_message(s.id, s.waiting_from, s.waiting_tag);
    case State::kDone:
      return false;
  }
  return false;
}

bool Transport::any_runnable_locked() const {
  for (const auto& s : slots_)
    if (slot_runnable(s)) return true;
  return false;
}

void Transport::hand_over(std::size_t from_slot) {
  const std::size_t count = slots_.size();
  for (std::size_t step = 1; step <= count; ++step) {
    const std::size_t idx = (from_slot + step) % count;
    if (slot_runnable(slots_[idx])) {
      current_ = idx;
      cv_.notify_all();
      return;
    }
  }
  for (const auto& s : slots_) {
    if (s.state != State::kDone) {
      deadlocked_ = true;
      break;
    }
  }
  cv_.notify_all();
}

Payload Transport::recv(PartyId at, PartyId from, std::string_view round_tag) {
  check_endpoint(at, "receiving");
  check_endpoint(from, "sending");
  std::unique_lock lk(mu_);
  Slot* me = running_ ? slot_of(at) : nullptr;
  if (me == nullptr) {
    // Caller is not a scheduled party: nobody else can produce the message.
    if (has_message(at, from, round_tag)) return take_message(at, from, round_tag);
    throw DeadlockError("party " + std::to_string(at.index) +
                        " waits on an empty link from party " +
                        std::to_string(from.index) + " (tag '" +
                        std::string(round_tag) + "') with no other party running");
  }
  const auto my_idx = static_cast<std::size_t>(me - slots_.data());
  for (;;) {
    if (aborted_) throw ProtocolError("run aborted: another party failed");
    if (has_message(at, from, round_tag)) {
      me->state = State::kReady;
      return take_message(at, from, round_tag);
    }
    if (deadlocked_) {
      throw DeadlockError("deadlock: party " + std::to_string(at.index) +
                          " waits for tag '" + std::string(round_tag) +
                          "' from party " + std::to_string(from.index) +
                          " and every other party is blocked");
    }
    me->state = State::kBlocked;
    me->waiting_from = from;
    me->waiting_tag = std::string(round_tag);
    if (mode_ == SchedulingMode::kCooperative) {
      hand_over(my_idx);
      cv_.wait(lk, [&] {
        return aborted_ || deadlocked_ ||
               (current_ == my_idx && has_message(at, from, round_tag));
      });
    } else {
      if (!any_runnable_locked()) {
        deadlocked_ = true;
        cv_.notify_all();
      }
      cv_.wait(lk, [&] {
        return aborted_ || deadlocked_ || has_message(at, from, round_tag);
      });
    }
  }
}

ChannelStats Transport::snapshot_stats() const {
  std::lock_guard lk(mu_);
  return stats_;
}

void Transport::run(
    std::vector<std::pair<PartyId, std::function<void()>>> bodies) {
  {
    std::lock_guard lk(mu_);
    if (running_) throw ProtocolError("transport is already running parties");
    slots_.clear();
    for (const auto& [id, body] : bodies) {
      check_endpoint(id, "scheduled");
      slots_.push_back(Slot{id, State::kReady, {}, {}});
    }
    running_ = true;
    deadlocked_ = false;
    aborted_ = false;
    current_ = 0;
  }

  std::exception_ptr first_error;
  std::exception_ptr root_error;  // first error that is not a knock-on abort
  std::mutex error_mu;
  std::vector<std::thread> threads;
  threads.reserve(bodies.size());
  for (std::size_t idx = 0; idx < bodies.size(); ++idx) {
    threads.emplace_back([&, idx] {
      bool skip = false;
      if (mode_ == SchedulingMode::kCooperative) {
        std::unique_lock lk(mu_);
        cv_.wait(lk, [&] { return current_ == idx || aborted_ || deadlocked_; });
        skip = aborted_ || deadlocked_;
      }
      bool failed = false;
      if (!skip) {
        try {
          bodies[idx].second();
        } catch (...) {
          failed = true;
          std::lock_guard elk(error_mu);
          auto err = std::current_exception();
          if (!first_error) first_error = err;
          bool knock_on = false;
          try {
            std::rethrow_exception(err);
          } catch (const ProtocolError& e) {
            knock_on = std::string_view(e.what()).starts_with("run aborted");
          } catch (...) {
          }
          if (!knock_on && !root_error) root_error = err;
        }
      }
      std::lock_guard lk(mu_);
      slots_[idx].state = State::kDone;
      if (failed) aborted_ = true;
      if (mode_ == SchedulingMode::kCooperative) {
        hand_over(idx);
      } else if (!any_runnable_locked()) {
        bool live = false;
        for (const auto& s : slots_) live = live || s.state != State::kDone;
        if (live) deadlocked_ = true;
      }
      cv_.notify_all();
    });
  }
  for (auto& t : threads) t.join();
  {
    std::lock_guard lk(mu_);
    running_ = false;
    slots_.clear();
  }
  if (root_error) std::rethrow_exception(root_error);
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace pplr::net
