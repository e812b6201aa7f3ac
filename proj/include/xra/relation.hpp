#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "xra/document.hpp"

namespace xra {

using NodePair = std::pair<NodeId, NodeId>;

// Set of node ids as a fixed-width bitset.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t n) : n_(n), bits_((n + 63) / 64, 0) {}

  std::size_t universe() const { return n_; }
  bool contains(NodeId v) const { return (bits_[v >> 6] >> (v & 63)) & 1U; }
  void insert(NodeId v) { bits_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(NodeId v) { bits_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  bool empty() const;
  std::size_t count() const;
  std::vector<NodeId> members() const;

  const std::vector<std::uint64_t>& words() const { return bits_; }
  std::vector<std::uint64_t>& words() { return bits_; }

  bool operator==(const NodeSet& o) const = default;
  bool operator<(const NodeSet& o) const { return bits_ < o.bits_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Binary relation over the nodes of one document, stored as a bit matrix
// (row u holds the successors of u).
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n)
      : n_(n), w_((n + 63) / 64), bits_(n * w_, 0) {}

  static Relation identity(std::size_t n);
  static Relation from_pairs(std::size_t n, const std::vector<NodePair>& ps);

  std::size_t universe() const { return n_; }
  bool contains(NodeId u, NodeId v) const {
    return (bits_[u * w_ + (v >> 6)] >> (v & 63)) & 1U;
  }
  void insert(NodeId u, NodeId v) {
    bits_[u * w_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
  }
  void erase(NodeId u, NodeId v) {
    bits_[u * w_ + (v >> 6)] &= ~(std::uint64_t{1} << (v & 63));
  }

  bool empty() const;
  std::size_t count() const;
  bool is_diagonal() const;
  std::vector<NodePair> pairs() const;

  NodeSet image(NodeId u) const;
  // {u : some (u, w) is present}
  NodeSet domain() const;
  NodeSet range() const;
  bool row_empty(NodeId u) const;

  Relation compose(const Relation& o) const;
  Relation transpose() const;
  Relation& operator|=(const Relation& o);
  Relation& operator&=(const Relation& o);
  Relation& operator-=(const Relation& o);
  friend Relation operator|(Relation a, const Relation& b) { return a |= b; }
  friend Relation operator&(Relation a, const Relation& b) { return a &= b; }
  friend Relation operator-(Relation a, const Relation& b) { return a -= b; }

  bool subset_of(const Relation& o) const;
  bool operator==(const Relation& o) const = default;

  std::size_t hash() const;
  const std::vector<std::uint64_t>& words() const { return bits_; }

 private:
  const std::uint64_t* row(NodeId u) const { return bits_.data() + u * w_; }
  std::uint64_t* row(NodeId u) { return bits_.data() + u * w_; }

  std::size_t n_ = 0;
  std::size_t w_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct RelationHash {
  std::size_t operator()(const Relation& r) const { return r.hash(); }
};

// "u v" per line, lexicographic order.
std::string format_relation(const Relation& r);
// "{0} {1,4} ..." style is in equiv; node sets print as "1,4,6".
std::string format_nodeset(const NodeSet& s);
std::string format_pair(NodePair p);

}  // namespace xra
