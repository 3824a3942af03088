#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace vetokit {

using Voter = std::size_t;
using Candidate = std::size_t;

/// Fixed-universe subset of {0..universe-1}. The tag keeps voter and
/// candidate sets from being mixed up.
template <class Tag>
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe) : bits_(universe) {}
  IndexSet(std::size_t universe, std::initializer_list<std::size_t> members) : bits_(universe) {
    for (auto x : members) insert(x);
  }

  static IndexSet full(std::size_t universe) {
    IndexSet s(universe);
    s.bits_.set();
    return s;
  }

  static IndexSet from_mask(std::size_t universe, unsigned long long mask) {
    IndexSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) {
      if ((mask >> i) & 1ULL) s.insert(i);
    }
    return s;
  }

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool contains(std::size_t x) const { return x < bits_.size() && bits_.test(x); }

  void insert(std::size_t x) { bits_.set(x); }
  void erase(std::size_t x) { bits_.reset(x); }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i)) {
      out.push_back(i);
    }
    return out;
  }

  bool is_subset_of(const IndexSet& other) const { return bits_.is_subset_of(other.bits_); }

  IndexSet& operator|=(const IndexSet& o) { bits_ |= o.bits_; return *this; }
  IndexSet& operator&=(const IndexSet& o) { bits_ &= o.bits_; return *this; }
  IndexSet& operator-=(const IndexSet& o) { bits_ -= o.bits_; return *this; }
  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
  friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }
  IndexSet complement() const {
    IndexSet s = *this;
    s.bits_.flip();
    return s;
  }

  friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.bits_ == b.bits_; }
  friend bool operator<(const IndexSet& a, const IndexSet& b) { return a.bits_ < b.bits_; }

 private:
  boost::dynamic_bitset<> bits_;
};

struct VoterTag {};
struct CandidateTag {};
using VoterSet = IndexSet<VoterTag>;
using CandidateSet = IndexSet<CandidateTag>;

}  // namespace vetokit
