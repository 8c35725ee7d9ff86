#include "opmi/wavelet_tree.hpp"

#include <algorithm>
#include <queue>

#include "opmi/serialize.hpp"

namespace opmi {

namespace {
constexpr unsigned kMaxCodeLen = 63;
}

// Huffman code lengths with deterministic tie-breaking (by creation order).
// Requires at least two symbols with nonzero frequency.
void HuffmanWaveletTree::assign_code_lengths(std::span<const std::uint64_t> freq) {
  struct Item {
    std::uint64_t weight;
    std::uint32_t id;
  };
  auto cmp = [](const Item& a, const Item& b) {
    return a.weight > b.weight || (a.weight == b.weight && a.id > b.id);
  };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);

  std::vector<std::int32_t> parent;
  std::vector<std::uint32_t> sym_node;  // symbol -> its leaf node id
  sym_node.assign(sigma_, 0);
  std::uint32_t next_id = 0;
  for (std::uint32_t c = 0; c < sigma_; ++c) {
    if (freq[c] == 0) continue;
    sym_node[c] = next_id;
    parent.push_back(-1);
    pq.push({freq[c], next_id++});
  }

  while (pq.size() > 1) {
    Item a = pq.top();
    pq.pop();
    Item b = pq.top();
    pq.pop();
    std::uint32_t id = next_id++;
    parent.push_back(-1);
    parent[a.id] = static_cast<std::int32_t>(id);
    parent[b.id] = static_cast<std::int32_t>(id);
    pq.push({a.weight + b.weight, id});
  }

  code_len_.assign(sigma_, 0);
  for (std::uint32_t c = 0; c < sigma_; ++c) {
    if (freq[c] == 0) continue;
    unsigned len = 0;
    for (std::int32_t v = parent[sym_node[c]]; v >= 0; v = parent[v]) ++len;
    if (len > kMaxCodeLen) throw Error("huffman code length exceeds 63 bits");
    code_len_[c] = static_cast<std::uint8_t>(len);
  }
}

// Canonical codes by (length, symbol), then the trie those codes induce.
// Deterministic given code_len_, which is all the serialized form stores.
void HuffmanWaveletTree::build_trie() {
  std::vector<Symbol> order;
  for (std::uint32_t c = 0; c < sigma_; ++c)
    if (code_len_[c] > 0) order.push_back(static_cast<Symbol>(c));
  if (order.size() < 2) throw CorruptContainer("huffman code needs at least two symbols");
  std::sort(order.begin(), order.end(), [&](Symbol a, Symbol b) {
    return code_len_[a] != code_len_[b] ? code_len_[a] < code_len_[b] : a < b;
  });

  code_.assign(sigma_, 0);
  std::uint64_t code = 0;
  unsigned prev_len = code_len_[order[0]];
  for (Symbol c : order) {
    if (code_len_[c] < prev_len) throw CorruptContainer("non-canonical code lengths");
    code <<= (code_len_[c] - prev_len);
    code_[c] = code;
    prev_len = code_len_[c];
    ++code;
    if (code > (std::uint64_t{1} << prev_len)) throw CorruptContainer("code lengths overfull");
  }

  nodes_.clear();
  nodes_.emplace_back();
  for (Symbol c : order) {
    std::uint32_t node = 0;
    unsigned len = code_len_[c];
    for (unsigned d = 0; d < len; ++d) {
      unsigned bit = (code_[c] >> (len - 1 - d)) & 1u;
      if (d + 1 == len) {
        nodes_[node].leaf[bit] = c;
      } else {
        if (nodes_[node].child[bit] < 0) {
          nodes_[node].child[bit] = static_cast<std::int32_t>(nodes_.size());
          nodes_.emplace_back();
        }
        node = static_cast<std::uint32_t>(nodes_[node].child[bit]);
      }
    }
  }
}

void HuffmanWaveletTree::build(std::span<const Symbol> data, std::uint32_t sigma) {
  n_ = data.size();
  sigma_ = sigma;
  nodes_.clear();
  std::vector<std::uint64_t> freq(sigma, 0);
  for (Symbol c : data) {
    if (c >= sigma) throw InvalidSymbol("symbol out of alphabet");
    ++freq[c];
  }
  std::uint32_t distinct = 0;
  Symbol last = 0;
  for (std::uint32_t c = 0; c < sigma; ++c)
    if (freq[c] > 0) {
      ++distinct;
      last = static_cast<Symbol>(c);
    }
  code_len_.assign(sigma, 0);
  single_ = distinct <= 1;
  if (single_) {
    only_symbol_ = last;
    return;
  }

  assign_code_lengths(freq);
  build_trie();

  // size each node bitvector up front, then set bits along every code path
  std::vector<std::uint64_t> node_bits(nodes_.size(), 0);
  for (std::uint32_t c = 0; c < sigma_; ++c) {
    if (code_len_[c] == 0) continue;
    std::uint32_t node = 0;
    for (unsigned d = 0; d < code_len_[c]; ++d) {
      node_bits[node] += freq[c];
      if (d + 1 < code_len_[c])
        node = static_cast<std::uint32_t>(
            nodes_[node].child[(code_[c] >> (code_len_[c] - 1 - d)) & 1u]);
    }
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) nodes_[i].bits.resize(node_bits[i]);

  std::vector<std::uint64_t> fill(nodes_.size(), 0);
  for (Symbol c : data) {
    std::uint32_t node = 0;
    unsigned len = code_len_[c];
    for (unsigned d = 0; d < len; ++d) {
      unsigned bit = (code_[c] >> (len - 1 - d)) & 1u;
      if (bit) nodes_[node].bits.set(fill[node]);
      ++fill[node];
      if (d + 1 < len) node = static_cast<std::uint32_t>(nodes_[node].child[bit]);
    }
  }
  for (auto& nd : nodes_) nd.bits.build_rank();
}

std::uint64_t HuffmanWaveletTree::rank(Symbol c, std::uint64_t pos) const {
  if (c >= sigma_) throw InvalidSymbol("symbol out of alphabet");
  if (single_) return c == only_symbol_ ? pos : 0;
  if (code_len_[c] == 0) return 0;
  std::uint32_t node = 0;
  unsigned len = code_len_[c];
  for (unsigned d = 0; d < len; ++d) {
    unsigned bit = (code_[c] >> (len - 1 - d)) & 1u;
    std::uint64_t ones = nodes_[node].bits.rank1(pos);
    pos = bit ? ones : pos - ones;
    if (d + 1 < len) node = static_cast<std::uint32_t>(nodes_[node].child[bit]);
  }
  return pos;
}

std::pair<Symbol, std::uint64_t> HuffmanWaveletTree::access_rank(std::uint64_t pos) const {
  if (single_) return {only_symbol_, pos};
  std::uint32_t node = 0;
  for (;;) {
    unsigned bit = nodes_[node].bits.get(pos) ? 1u : 0u;
    std::uint64_t ones = nodes_[node].bits.rank1(pos);
    pos = bit ? ones : pos - ones;
    std::int32_t next = nodes_[node].child[bit];
    if (next < 0) return {nodes_[node].leaf[bit], pos};
    node = static_cast<std::uint32_t>(next);
  }
}

void HuffmanWaveletTree::save(ByteWriter& out) const {
  out.u64(n_);
  out.u32(sigma_);
  out.u8(single_ ? 1 : 0);
  out.u16(only_symbol_);
  for (std::uint32_t c = 0; c < sigma_; ++c) out.u8(code_len_[c]);
  out.u32(static_cast<std::uint32_t>(nodes_.size()));
  for (const auto& nd : nodes_) {
    out.u64(nd.bits.size());
    for (std::uint64_t w : nd.bits.words()) out.u64(w);
  }
}

void HuffmanWaveletTree::load(ByteReader& in) {
  n_ = in.u64();
  sigma_ = in.u32();
  if (sigma_ == 0 || sigma_ > 1u << 16) throw CorruptContainer("bad wavelet tree alphabet");
  single_ = in.u8() != 0;
  only_symbol_ = static_cast<Symbol>(in.u16());
  code_len_.assign(sigma_, 0);
  for (std::uint32_t c = 0; c < sigma_; ++c) {
    code_len_[c] = in.u8();
    if (code_len_[c] > kMaxCodeLen) throw CorruptContainer("bad code length");
  }
  nodes_.clear();
  if (!single_) build_trie();
  std::uint32_t node_count = in.u32();
  if (node_count != nodes_.size())
    throw CorruptContainer("wavelet tree shape does not match code lengths");
  for (auto& nd : nodes_) {
    std::uint64_t nbits = in.u64();
    if (nbits > 8 * in.size()) throw CorruptContainer("bitvector length out of bounds");
    nd.bits.resize(nbits);
    for (auto& w : nd.bits.words()) w = in.u64();
    nd.bits.build_rank();
  }
}

}  // namespace opmi
