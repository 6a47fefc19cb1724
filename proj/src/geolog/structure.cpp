#include "sitelab/geolog/structure.hpp"

#include <algorithm>
#include <numeric>

#include "sitelab/error.hpp"

namespace sitelab::geolog {

namespace {

std::vector<int> sort_indices(const Signature& sig, const std::vector<std::string>& sorts) {
  std::vector<int> out;
  for (const auto& s : sorts) out.push_back(*sig.find_sort(s));
  return out;
}

// Applies one permutation per sort to the tables of m.
FinStructure relabel(const Signature& sig, const FinStructure& m, const std::vector<std::vector<int>>& perm) {
  FinStructure out = m;
  auto remap = [&](const std::vector<int>& sorts, std::size_t index) {
    // decode old tuple, permute each coordinate, re-encode
    std::vector<int> digits(sorts.size());
    for (std::size_t k = sorts.size(); k-- > 0;) {
      const int base = m.size(sorts[k]);
      digits[k] = static_cast<int>(index % base);
      index /= base;
    }
    std::size_t mapped = 0;
    for (std::size_t k = 0; k < sorts.size(); ++k) mapped = mapped * m.size(sorts[k]) + perm[sorts[k]][digits[k]];
    return mapped;
  };
  for (std::size_t f = 0; f < sig.functions.size(); ++f) {
    const auto sorts = sort_indices(sig, sig.functions[f].args);
    const int result = *sig.find_sort(sig.functions[f].result);
    for (std::size_t i = 0; i < m.functions[f].size(); ++i) {
      out.functions[f][remap(sorts, i)] = perm[result][m.functions[f][i]];
    }
  }
  for (std::size_t r = 0; r < sig.relations.size(); ++r) {
    const auto sorts = sort_indices(sig, sig.relations[r].args);
    for (std::size_t i = 0; i < m.relations[r].size(); ++i) out.relations[r][remap(sorts, i)] = m.relations[r][i];
  }
  return out;
}

}  // namespace

std::size_t tuple_count(const Signature& sig, const FinStructure& m, const std::vector<std::string>& sorts) {
  std::size_t n = 1;
  for (const auto& s : sorts) n *= static_cast<std::size_t>(m.size(*sig.find_sort(s)));
  return n;
}

void require_matches(const Signature& sig, const FinStructure& m) {
  if (m.elements.size() != sig.sorts.size() || m.functions.size() != sig.functions.size() ||
      m.relations.size() != sig.relations.size()) {
    throw Error("SignatureMismatch", "structure does not have one table per symbol of the signature");
  }
  for (std::size_t f = 0; f < sig.functions.size(); ++f) {
    const auto& fn = sig.functions[f];
    if (m.functions[f].size() != tuple_count(sig, m, fn.args)) {
      throw Error("SignatureMismatch", "table of '" + fn.name + "' is not total");
    }
    const int range = m.size(*sig.find_sort(fn.result));
    for (int v : m.functions[f]) {
      if (v < 0 || v >= range) throw Error("SignatureMismatch", "table of '" + fn.name + "' leaves sort " + fn.result);
    }
  }
  for (std::size_t r = 0; r < sig.relations.size(); ++r) {
    if (m.relations[r].size() != tuple_count(sig, m, sig.relations[r].args)) {
      throw Error("SignatureMismatch", "table of '" + sig.relations[r].name + "' has the wrong size");
    }
  }
}

FinStructure blank_structure(const Signature& sig, const std::vector<int>& sizes) {
  FinStructure m;
  for (int n : sizes) {
    std::vector<std::string> names;
    for (int k = 0; k < n; ++k) names.push_back(std::to_string(k));
    m.elements.push_back(std::move(names));
  }
  for (const auto& fn : sig.functions) m.functions.emplace_back(tuple_count(sig, m, fn.args), 0);
  for (const auto& r : sig.relations) m.relations.emplace_back(tuple_count(sig, m, r.args), 0);
  return m;
}

std::vector<int> structure_key(const FinStructure& m) {
  std::vector<int> key;
  for (const auto& e : m.elements) key.push_back(static_cast<int>(e.size()));
  for (const auto& t : m.functions) key.insert(key.end(), t.begin(), t.end());
  for (const auto& t : m.relations) key.insert(key.end(), t.begin(), t.end());
  return key;
}

FinStructure canonical_form(const Signature& sig, const FinStructure& m) {
  const std::size_t sorts = sig.sorts.size();
  std::vector<std::vector<int>> perm(sorts);
  for (std::size_t s = 0; s < sorts; ++s) {
    perm[s].resize(m.elements[s].size());
    std::iota(perm[s].begin(), perm[s].end(), 0);
  }
  FinStructure best = m;
  std::vector<int> best_key = structure_key(m);
  // odometer over the product of per-sort permutations
  while (true) {
    FinStructure candidate = relabel(sig, m, perm);
    std::vector<int> key = structure_key(candidate);
    if (key < best_key) {
      best_key = std::move(key);
      best = std::move(candidate);
    }
    std::size_t s = 0;
    while (s < sorts && !std::next_permutation(perm[s].begin(), perm[s].end())) ++s;
    if (s == sorts) break;
  }
  for (auto& names : best.elements) {
    for (std::size_t k = 0; k < names.size(); ++k) names[k] = std::to_string(k);
  }
  return best;
}

FinStructure reduct(const Signature& from, const FinStructure& m, const Signature& to) {
  FinStructure out;
  for (const auto& s : to.sorts) {
    auto i = from.find_sort(s);
    if (!i) throw Error("SignatureMismatch", "sort '" + s + "' missing from the source signature");
    out.elements.push_back(m.elements[*i]);
  }
  for (const auto& fn : to.functions) {
    auto i = from.find_function(fn.name);
    if (!i) throw Error("SignatureMismatch", "function '" + fn.name + "' missing from the source signature");
    out.functions.push_back(m.functions[*i]);
  }
  for (const auto& r : to.relations) {
    auto i = from.find_relation(r.name);
    if (!i) throw Error("SignatureMismatch", "relation '" + r.name + "' missing from the source signature");
    out.relations.push_back(m.relations[*i]);
  }
  return out;
}

}  // namespace sitelab::geolog
