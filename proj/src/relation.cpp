#include "xra/relation.hpp"

#include <algorithm>

namespace xra {

bool NodeSet::empty() const {
  return std::all_of(bits_.begin(), bits_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

std::size_t NodeSet::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<NodeId> NodeSet::members() const {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    for (std::uint64_t w = bits_[i]; w != 0; w &= w - 1) {
      out.push_back(static_cast<NodeId>(i * 64 + std::countr_zero(w)));
    }
  }
  return out;
}

Relation Relation::identity(std::size_t n) {
  Relation r(n);
  for (NodeId v = 0; v < n; ++v) r.insert(v, v);
  return r;
}

Relation Relation::from_pairs(std::size_t n, const std::vector<NodePair>& ps) {
  Relation r(n);
  for (auto [u, v] : ps) {
    if (u >= n || v >= n) {
      throw std::out_of_range("pair (" + std::to_string(u) + "," +
                              std::to_string(v) + ") out of range");
    }
    r.insert(u, v);
  }
  return r;
}

bool Relation::empty() const {
  return std::all_of(bits_.begin(), bits_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

std::size_t Relation::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Relation::is_diagonal() const {
  for (NodeId u = 0; u < n_; ++u) {
    for (std::size_t i = 0; i < w_; ++i) {
      std::uint64_t w = row(u)[i];
      if (i == (u >> 6)) w &= ~(std::uint64_t{1} << (u & 63));
      if (w != 0) return false;
    }
  }
  return true;
}

std::vector<NodePair> Relation::pairs() const {
  std::vector<NodePair> out;
  for (NodeId u = 0; u < n_; ++u) {
    for (std::size_t i = 0; i < w_; ++i) {
      for (std::uint64_t w = row(u)[i]; w != 0; w &= w - 1) {
        out.emplace_back(u, static_cast<NodeId>(i * 64 + std::countr_zero(w)));
      }
    }
  }
  return out;
}

NodeSet Relation::image(NodeId u) const {
  NodeSet s(n_);
  std::copy(row(u), row(u) + w_, s.words().begin());
  return s;
}

bool Relation::row_empty(NodeId u) const {
  return std::all_of(row(u), row(u) + w_,
                     [](std::uint64_t w) { return w == 0; });
}

NodeSet Relation::domain() const {
  NodeSet s(n_);
  for (NodeId u = 0; u < n_; ++u) {
    if (!row_empty(u)) s.insert(u);
  }
  return s;
}

NodeSet Relation::range() const {
  NodeSet s(n_);
  for (NodeId u = 0; u < n_; ++u) {
    for (std::size_t i = 0; i < w_; ++i) s.words()[i] |= row(u)[i];
  }
  return s;
}

Relation Relation::compose(const Relation& o) const {
  Relation r(n_);
  for (NodeId u = 0; u < n_; ++u) {
    std::uint64_t* out = r.row(u);
    for (std::size_t i = 0; i < w_; ++i) {
      for (std::uint64_t w = row(u)[i]; w != 0; w &= w - 1) {
        auto mid = static_cast<NodeId>(i * 64 + std::countr_zero(w));
        const std::uint64_t* in = o.row(mid);
        for (std::size_t j = 0; j < w_; ++j) out[j] |= in[j];
      }
    }
  }
  return r;
}

Relation Relation::transpose() const {
  Relation r(n_);
  for (auto [u, v] : pairs()) r.insert(v, u);
  return r;
}

Relation& Relation::operator|=(const Relation& o) {
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
  return *this;
}

Relation& Relation::operator&=(const Relation& o) {
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
  return *this;
}

Relation& Relation::operator-=(const Relation& o) {
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= ~o.bits_[i];
  return *this;
}

bool Relation::subset_of(const Relation& o) const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if ((bits_[i] & ~o.bits_[i]) != 0) return false;
  }
  return true;
}

std::size_t Relation::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ n_;
  for (auto w : bits_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::string format_relation(const Relation& r) {
  std::string out;
  for (auto [u, v] : r.pairs()) {
    out += std::to_string(u) + ' ' + std::to_string(v) + '\n';
  }
  return out;
}

std::string format_nodeset(const NodeSet& s) {
  std::string out;
  for (NodeId v : s.members()) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

std::string format_pair(NodePair p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

}  // namespace xra
