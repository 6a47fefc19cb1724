#include "sitelab/setfunctor.hpp"

#include "sitelab/error.hpp"

namespace sitelab {

bool is_functor(const FinCategory& c, const SetFunctor& fn) {
  if (fn.sizes.size() != static_cast<std::size_t>(c.object_count())) return false;
  if (fn.action.size() != static_cast<std::size_t>(c.arrow_count())) return false;
  for (int f = 0; f < c.arrow_count(); ++f) {
    if (fn.action[f].size() != static_cast<std::size_t>(fn.sizes[c.dom(f)])) return false;
    for (int v : fn.action[f]) {
      if (v < 0 || v >= fn.sizes[c.cod(f)]) return false;
    }
    if (c.is_identity(f)) {
      for (int x = 0; x < fn.sizes[c.dom(f)]; ++x) {
        if (fn.action[f][x] != x) return false;
      }
    }
  }
  for (int f = 0; f < c.arrow_count(); ++f) {
    for (int g : c.arrows_from(c.cod(f))) {
      int h = c.after(g, f);
      for (int x = 0; x < fn.sizes[c.dom(f)]; ++x) {
        if (fn.action[g][fn.action[f][x]] != fn.action[h][x]) return false;
      }
    }
  }
  return true;
}

namespace {

class FunctorSearch {
 public:
  FunctorSearch(const FinCategory& c, std::size_t max_size, const Bounds& bounds,
                const std::function<bool(const SetFunctor&)>& visit)
      : c_(c), max_size_(static_cast<int>(max_size)), bounds_(bounds), visit_(visit) {
    for (int f = 0; f < c.arrow_count(); ++f) {
      if (!c.is_identity(f)) free_arrows_.push_back(f);
    }
    // position[f] = order in which f's table is fixed; identities first.
    position_.assign(c.arrow_count(), -1);
    for (int f = 0; f < c.arrow_count(); ++f) {
      if (c.is_identity(f)) position_[f] = -1;
    }
    for (std::size_t i = 0; i < free_arrows_.size(); ++i) position_[free_arrows_[i]] = static_cast<int>(i);
  }

  void run() {
    current_.sizes.assign(c_.object_count(), 0);
    current_.action.assign(c_.arrow_count(), {});
    sizes(0);
  }

 private:
  const FinCategory& c_;
  int max_size_;
  const Bounds& bounds_;
  const std::function<bool(const SetFunctor&)>& visit_;
  std::vector<int> free_arrows_;
  std::vector<int> position_;
  SetFunctor current_;
  std::size_t steps_ = 0;
  bool stop_ = false;

  void tick() {
    if (++steps_ > bounds_.search_budget) throw explosion_guard("set-functor enumeration exceeded its search budget");
  }

  void sizes(int obj) {
    if (stop_) return;
    if (obj == c_.object_count()) {
      for (int o = 0; o < c_.object_count(); ++o) {
        auto& id = current_.action[c_.identity(o)];
        id.resize(current_.sizes[o]);
        for (int x = 0; x < current_.sizes[o]; ++x) id[x] = x;
      }
      tables(0);
      return;
    }
    for (int n = 0; n <= max_size_ && !stop_; ++n) {
      current_.sizes[obj] = n;
      sizes(obj + 1);
    }
  }

  bool fixed(int f, int upto) const { return position_[f] < upto; }

  // Checks every composite relation whose three arrows are all fixed and
  // that involves the arrow fixed at position `pos`.
  bool consistent(int pos) const {
    const int f0 = free_arrows_[pos];
    auto check = [&](int f, int g) {
      int h = c_.after(g, f);
      if (!fixed(h, pos + 1)) return true;
      for (int x = 0; x < current_.sizes[c_.dom(f)]; ++x) {
        if (current_.action[g][current_.action[f][x]] != current_.action[h][x]) return false;
      }
      return true;
    };
    for (int g : c_.arrows_from(c_.cod(f0))) {
      if (fixed(g, pos + 1) && !check(f0, g)) return false;
    }
    for (int f : c_.arrows_into(c_.dom(f0))) {
      if (fixed(f, pos + 1) && !check(f, f0)) return false;
    }
    // f0 as the composite of two earlier arrows.
    for (int f = 0; f < c_.arrow_count(); ++f) {
      if (!fixed(f, pos + 1)) continue;
      for (int g : c_.arrows_from(c_.cod(f))) {
        if (c_.after(g, f) == f0 && fixed(g, pos + 1) && !check(f, g)) return false;
      }
    }
    return true;
  }

  void tables(std::size_t pos) {
    if (stop_) return;
    if (pos == free_arrows_.size()) {
      if (!visit_(current_)) stop_ = true;
      return;
    }
    const int f = free_arrows_[pos];
    const int n = current_.sizes[c_.dom(f)];
    const int m = current_.sizes[c_.cod(f)];
    auto& table = current_.action[f];
    if (n > 0 && m == 0) return;
    table.assign(n, 0);
    while (true) {
      tick();
      if (consistent(static_cast<int>(pos))) tables(pos + 1);
      if (stop_) return;
      int i = 0;
      while (i < n && ++table[i] == m) table[i++] = 0;
      if (i == n) break;
    }
  }
};

}  // namespace

void enumerate_set_functors(const FinCategory& c, std::size_t max_size, const Bounds& bounds,
                            const std::function<bool(const SetFunctor&)>& visit) {
  FunctorSearch(c, max_size, bounds, visit).run();
}

}  // namespace sitelab
