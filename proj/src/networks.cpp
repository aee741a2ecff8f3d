#include "meshc/networks.hpp"

#include <algorithm>
#include <numeric>

namespace meshc {

std::vector<std::vector<int>> ComparatorNetwork::layers() const {
  std::vector<int> busy(wires, 0);
  std::vector<std::vector<int>> out;
  for (auto [i, j] : comparators) {
    int t = std::max(busy[i], busy[j]) + 1;
    busy[i] = busy[j] = t;
    if (static_cast<int>(out.size()) < t) out.resize(t);
    out[t - 1].push_back(i);
  }
  for (auto& l : out) std::sort(l.begin(), l.end());
  return out;
}

ChipLayout ComparatorNetwork::to_layout(bool terminal_phase_layer) const {
  ChipLayout lay;
  lay.modes = wires;
  auto ls = layers();
  lay.layers.assign(ls.rbegin(), ls.rend());
  lay.terminal_phase_layer = terminal_phase_layer;
  lay.validate();
  return lay;
}

ComparatorNetwork full_sorting_network(int m) {
  if (m < 1) throw DimensionError("full_sorting_network: m >= 1");
  ComparatorNetwork net;
  net.wires = m;
  if (m == 1) return net;
  for (int t = 0; t < m; ++t)
    for (int i = t % 2; i + 1 < m; i += 2) net.comparators.emplace_back(i, i + 1);
  return net;
}

ComparatorNetwork reck_network(int m) {
  if (m < 1) throw DimensionError("reck_network: m >= 1");
  ComparatorNetwork net;
  net.wires = m;
  // sort labels one by one: a bottom-up bubbling chain per label
  for (int label = 0; label + 1 < m; ++label)
    for (int j = m - 2; j >= label; --j) net.comparators.emplace_back(j, j + 1);
  return net;
}

ComparatorNetwork partial_sorting_network(int m, int n) {
  if (n < 1 || n > m) throw DimensionError("partial_sorting_network: 1<=n<=m");
  // Recursion: the initial diagonal sorts one label; then alternately append
  // a subdiagonal layer and prepend a superdiagonal layer. Layer l carries
  // m - l comparators.
  std::vector<std::pair<int, int>> pre, post;
  for (int j = m - 2; j >= 0; --j) post.emplace_back(j, j + 1);
  int sub_added = 0;
  for (int l = 2; l <= n; ++l) {
    int size = m - l;
    if (l % 2 == 0) {
      ++sub_added;
      for (int j = m - 2; j >= m - 1 - size; --j) post.emplace_back(j, j + 1);
    } else {
      std::vector<std::pair<int, int>> chain;
      for (int j = size - 1; j >= 0; --j) chain.emplace_back(j, j + 1);
      pre.insert(pre.begin(), chain.begin(), chain.end());
    }
  }
  ComparatorNetwork net;
  net.wires = m;
  net.comparators = std::move(pre);
  net.comparators.insert(net.comparators.end(), post.begin(), post.end());
  return net;
}

ComparatorNetwork diamond_block(int p) {
  if (p < 1) throw DimensionError("diamond_block: p >= 1");
  ComparatorNetwork net;
  net.wires = 2 * p;
  // p diagonal chains, each carrying one label across the block boundary
  for (int l = 0; l < p; ++l)
    for (int j = p + l - 1; j >= l; --j) net.comparators.emplace_back(j, j + 1);
  return net;
}

namespace {

std::vector<int> run_network(const ComparatorNetwork& net,
                             std::vector<int> labels) {
  for (auto [i, j] : net.comparators)
    if (labels[i] > labels[j]) std::swap(labels[i], labels[j]);
  return labels;
}

template <typename Check>
bool for_all_permutations(int m, Check check) {
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (!check(perm)) return false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

}  // namespace

bool sorts_partially(const ComparatorNetwork& net, int n) {
  if (net.wires > 10)
    throw DimensionError("sorts_partially: exhaustive mode needs wires <= 10");
  return for_all_permutations(net.wires, [&](const std::vector<int>& perm) {
    auto out = run_network(net, perm);
    for (int i = 0; i < n; ++i)
      if (out[i] != i) return false;
    return true;
  });
}

bool two_block_sorts(const ComparatorNetwork& net) {
  if (net.wires > 10)
    throw DimensionError("two_block_sorts: exhaustive mode needs wires <= 10");
  int half = net.wires / 2;
  return for_all_permutations(net.wires, [&](const std::vector<int>& perm) {
    auto out = run_network(net, perm);
    for (int i = 0; i < half; ++i)
      if (out[i] >= half) return false;
    return true;
  });
}

int BlockLayout::total_mzi_count() const {
  int p = block_size, k = block_count;
  int sorter =
      variant == Variant::Diamond ? p * p : (2 * p) * (2 * p - 1) / 2;
  int n_sorters = 0;
  for (const auto& s : sorter_stages) n_sorters += static_cast<int>(s.size());
  return n_sorters * sorter + k * (p * (p - 1) / 2);
}

int BlockLayout::depth() const {
  int p = block_size;
  int sorter_depth = variant == Variant::Diamond ? 2 * p - 1 : 2 * p;
  return static_cast<int>(sorter_stages.size()) * sorter_depth + p;
}

BlockLayout block_layout(int m, int p, BlockLayout::Variant variant) {
  if (p < 1 || m % p != 0)
    throw DimensionError("block_layout: p must divide m");
  BlockLayout b;
  b.modes = m;
  b.block_size = p;
  b.block_count = m / p;
  b.variant = variant;
  b.sorter_stages = full_sorting_network(b.block_count).layers();
  return b;
}

}  // namespace meshc
