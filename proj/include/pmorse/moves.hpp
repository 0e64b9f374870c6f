#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <vector>

#include "pmorse/error.hpp"

namespace pmorse {

using FacetId = int;

// Partition of the facet ids 0..n-1 into blocks, ordered by smallest member.
class MoveSystem {
 public:
  MoveSystem() = default;

  MoveSystem(std::vector<std::vector<FacetId>> blocks, std::size_t num_facets) {
    for (auto& b : blocks) {
      if (b.empty()) throw InputError("move system: empty block");
      std::sort(b.begin(), b.end());
    }
    std::sort(blocks.begin(), blocks.end());
    block_of_.assign(num_facets, -1);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      for (FacetId f : blocks[i]) {
        if (f < 0 || static_cast<std::size_t>(f) >= num_facets) {
          throw InputError("move system: unknown facet " + std::to_string(f));
        }
        if (block_of_[static_cast<std::size_t>(f)] != -1) {
          throw InputError("move system: facet " + std::to_string(f) +
                           " appears in two blocks");
        }
        block_of_[static_cast<std::size_t>(f)] = static_cast<int>(i);
      }
    }
    for (std::size_t f = 0; f < num_facets; ++f) {
      if (block_of_[f] == -1) {
        throw InputError("move system: facet " + std::to_string(f) + " is in no block");
      }
    }
    blocks_ = std::move(blocks);
  }

  const std::vector<std::vector<FacetId>>& blocks() const noexcept { return blocks_; }
  const std::vector<FacetId>& block(int b) const { return blocks_.at(static_cast<std::size_t>(b)); }
  int block_of(FacetId f) const { return block_of_.at(static_cast<std::size_t>(f)); }
  std::size_t num_facets() const noexcept { return block_of_.size(); }
  std::size_t size() const noexcept { return blocks_.size(); }

  friend bool operator==(const MoveSystem&, const MoveSystem&) = default;

 private:
  std::vector<std::vector<FacetId>> blocks_;
  std::vector<int> block_of_;
};

enum class Status : char { In = 'I', Out = 'O' };

inline Status flip(Status s) { return s == Status::In ? Status::Out : Status::In; }

// Status of every facet, indexed by facet id. Serialized as a string of
// 'I'/'O' characters; the serialization order is the canonical order.
class State {
 public:
  State() = default;
  explicit State(std::vector<Status> status) : status_(std::move(status)) {}

  static State from_string(const std::string& text) {
    std::vector<Status> s;
    for (char c : text) {
      if (c == 'I') {
        s.push_back(Status::In);
      } else if (c == 'O') {
        s.push_back(Status::Out);
      } else {
        throw InputError(std::string("state: unexpected character '") + c + "'");
      }
    }
    return State(std::move(s));
  }

  static State all(std::size_t n, Status s) { return State(std::vector<Status>(n, s)); }

  Status operator[](FacetId f) const { return status_.at(static_cast<std::size_t>(f)); }
  void set(FacetId f, Status s) { status_.at(static_cast<std::size_t>(f)) = s; }
  std::size_t size() const noexcept { return status_.size(); }
  const std::vector<Status>& values() const noexcept { return status_; }

  std::string to_string() const {
    std::string out;
    out.reserve(status_.size());
    for (Status s : status_) out.push_back(static_cast<char>(s));
    return out;
  }

  friend auto operator<=>(const State&, const State&) = default;
  friend bool operator==(const State&, const State&) = default;

 private:
  std::vector<Status> status_;
};

}  // namespace pmorse
