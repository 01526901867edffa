#include "forge/difference_family.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace forge {

namespace {

// Z_{f1} x Z_{f2} x ..., elements encoded in mixed radix, first factor most
// significant.
class AbelianGroup {
 public:
  explicit AbelianGroup(std::vector<int> factors)
      : factors_(std::move(factors)) {
    order_ = 1;
    for (int f : factors_) {
      require(f >= 2, Errc::InvalidInput, "group factors must be >= 2");
      order_ *= f;
    }
    weights_.assign(factors_.size(), 1);
    for (int i = static_cast<int>(factors_.size()) - 2; i >= 0; --i)
      weights_[i] = weights_[i + 1] * factors_[i + 1];
  }

  int order() const { return order_; }

  int add(int a, int b) const {
    int out = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const int da = (a / weights_[i]) % factors_[i];
      const int db = (b / weights_[i]) % factors_[i];
      out += ((da + db) % factors_[i]) * weights_[i];
    }
    return out;
  }

  int neg(int a) const {
    int out = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const int da = (a / weights_[i]) % factors_[i];
      out += ((factors_[i] - da) % factors_[i]) * weights_[i];
    }
    return out;
  }

  int sub(int a, int b) const { return add(a, neg(b)); }

  // true when k*g = 0
  bool order_divides(int g, int k) const {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const int d = (g / weights_[i]) % factors_[i];
      if ((static_cast<long long>(d) * k) % factors_[i] != 0) return false;
    }
    return true;
  }

 private:
  std::vector<int> factors_;
  std::vector<int> weights_;
  int order_ = 1;
};

std::vector<int> factors_or_cyclic(const DifferenceFamily& df) {
  return df.factors.empty() ? std::vector<int>{df.v} : df.factors;
}

void check_structure(const DifferenceFamily& df, const AbelianGroup& group) {
  require(df.v >= 2, Errc::InvalidInput, "group order must be >= 2");
  require(group.order() == df.v, Errc::InvalidInput,
          "factors do not multiply to v");
  require(df.base_blocks.size() == df.orbit_lengths.size(), Errc::InvalidInput,
          "orbit_lengths must align with base_blocks");
  for (std::size_t i = 0; i < df.base_blocks.size(); ++i) {
    const Block& b = df.base_blocks[i];
    require(b.size() >= 2, Errc::InvalidInput, "base block too small");
    for (std::size_t j = 0; j < b.size(); ++j) {
      require(b[j] >= 0 && b[j] < df.v, Errc::InvalidInput,
              "base block element out of range");
      require(j == 0 || b[j - 1] < b[j], Errc::InvalidInput,
              "base block not strictly ascending");
    }
    const int o = df.orbit_lengths[i];
    require(o >= 1 && o <= df.v && df.v % o == 0, Errc::InvalidInput,
            "orbit length must divide the group order");
  }
}

}  // namespace

Design develop_difference_family(const DifferenceFamily& df) {
  const AbelianGroup group(factors_or_cyclic(df));
  check_structure(df, group);

  Design d;
  d.n = df.v;
  for (int p = 0; p < df.v; ++p) d.groups.push_back({p});

  std::vector<int> sizes;
  for (std::size_t i = 0; i < df.base_blocks.size(); ++i) {
    sizes.push_back(static_cast<int>(df.base_blocks[i].size()));
    std::set<Block> translates;
    for (int g = 0; g < df.v; ++g) {
      Block b;
      for (int x : df.base_blocks[i]) b.push_back(group.add(x, g));
      std::sort(b.begin(), b.end());
      translates.insert(std::move(b));
    }
    require(static_cast<int>(translates.size()) == df.orbit_lengths[i],
            Errc::InvalidInput,
            "declared orbit length does not match the actual orbit");
    for (const auto& b : translates) d.blocks.push_back(b);
  }
  d.meta["construction"] = "difference_family";
  d.meta["v"] = df.v;
  d.meta["factors"] = factors_or_cyclic(df);
  canonicalize(d);

  auto report = verify_pbd(d, BlockSizeSet(sizes));
  require(report.pass, Errc::InvalidFamily,
          "development is not a PBD (" + report.summary() + ")");
  return d;
}

DifferenceFamily search_difference_family_group(std::vector<int> factors,
                                                int k) {
  const AbelianGroup group(factors);
  const int v = group.order();
  require(k >= 2, Errc::InvalidInput, "need k >= 2");
  require(k <= v, Errc::InvalidInput, "k exceeds the group order");

  const int pair_diffs = k * (k - 1);  // ordered differences per full block

  // the only supported short orbit is the order-k subgroup itself
  Block subgroup_block;
  for (int g = 0; g < v; ++g)
    if (group.order_divides(g, k)) subgroup_block.push_back(g);

  bool use_short = false;
  int full_blocks = 0;
  if ((v - 1) % pair_diffs == 0) {
    full_blocks = (v - 1) / pair_diffs;
  } else if (static_cast<int>(subgroup_block.size()) == k &&
             (v - k) % pair_diffs == 0) {
    use_short = true;
    full_blocks = (v - k) / pair_diffs;
  } else {
    raise(Errc::Infeasible, "(" + std::to_string(v) + "," + std::to_string(k) +
                                ",1) fails the orbit accounting");
  }

  std::vector<char> covered(v, 0);  // covered[d] for nonzero differences d
  DifferenceFamily result;
  result.v = v;
  result.factors = std::move(factors);

  if (use_short) {
    for (int d : subgroup_block)
      if (d != 0) covered[d] = 1;
    result.base_blocks.push_back(subgroup_block);
    result.orbit_lengths.push_back(v / k);
  }

  // Full-orbit base blocks are normalized to contain 0 (translation), listed
  // with elements ascending, and chosen in increasing lexicographic order, so
  // the first complete assignment is the least family under that form.
  std::vector<Block> chosen;
  Block current;

  std::function<bool(int)> extend_block;
  std::function<bool()> next_block;

  extend_block = [&](int min_next) -> bool {
    if (static_cast<int>(current.size()) == k) {
      chosen.push_back(current);
      Block saved = current;
      if (next_block()) return true;
      chosen.pop_back();
      current = std::move(saved);
      return false;
    }
    for (int x = min_next; x < v; ++x) {
      std::vector<int> added;
      bool ok = true;
      for (int y : current) {
        const int d1 = group.sub(x, y);
        const int d2 = group.sub(y, x);
        if (d1 == d2 || covered[d1] || covered[d2]) {
          ok = false;  // d1 == d2 would cover an involution difference twice
          break;
        }
        covered[d1] = covered[d2] = 1;
        added.push_back(d1);
        added.push_back(d2);
      }
      if (ok) {
        current.push_back(x);
        if (extend_block(x + 1)) return true;
        current.pop_back();
      }
      for (int d : added) covered[d] = 0;
    }
    return false;
  };

  next_block = [&]() -> bool {
    bool all_covered = true;
    for (int d = 1; d < v; ++d)
      if (!covered[d]) {
        all_covered = false;
        break;
      }
    if (all_covered) return true;
    if (static_cast<int>(chosen.size()) == full_blocks) return false;
    // blocks all contain 0, so a sorted family has nondecreasing second
    // elements; starting there skips permuted duplicates
    const int floor = chosen.empty() ? 1 : chosen.back()[1];
    current = {0};
    return extend_block(floor);
  };

  if (!next_block())
    raise(Errc::NotFound, "search exhausted for (" + std::to_string(v) + "," +
                              std::to_string(k) + ",1)");

  for (auto& b : chosen) {
    result.base_blocks.push_back(std::move(b));
    result.orbit_lengths.push_back(v);
  }

  // canonical family order: base blocks sorted lexicographically
  std::vector<std::size_t> order(result.base_blocks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return result.base_blocks[a] < result.base_blocks[b];
  });
  DifferenceFamily sorted;
  sorted.v = v;
  sorted.factors = result.factors;
  for (std::size_t i : order) {
    sorted.base_blocks.push_back(std::move(result.base_blocks[i]));
    sorted.orbit_lengths.push_back(result.orbit_lengths[i]);
  }

  develop_difference_family(sorted);  // post: the development verifies
  return sorted;
}

DifferenceFamily search_difference_family(int v, int k) {
  require(v >= 2, Errc::InvalidInput, "need v >= 2");
  return search_difference_family_group({v}, k);
}

std::vector<std::vector<int>> abelian_groups_of_order(int n) {
  require(n >= 2, Errc::InvalidInput, "order must be >= 2");

  // prime factorization
  std::vector<std::pair<int, int>> primes;  // (p, exponent)
  int rest = n;
  for (int p = 2; p * p <= rest; ++p)
    if (rest % p == 0) {
      int e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      primes.emplace_back(p, e);
    }
  if (rest > 1) primes.emplace_back(rest, 1);

  // partitions of each exponent, descending parts
  auto partitions = [](int e) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
      if (remaining == 0) {
        out.push_back(cur);
        return;
      }
      for (int part = std::min(remaining, max_part); part >= 1; --part) {
        cur.push_back(part);
        rec(remaining - part, part);
        cur.pop_back();
      }
    };
    rec(e, e);
    return out;
  };

  std::vector<std::vector<std::vector<int>>> per_prime;
  for (auto [p, e] : primes) {
    (void)p;
    per_prime.push_back(partitions(e));
  }

  // combine one partition per prime into invariant factors (aligned at the
  // largest part)
  std::vector<std::vector<int>> groups;
  std::vector<std::size_t> pick(primes.size(), 0);
  while (true) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < primes.size(); ++i)
      count = std::max(count, per_prime[i][pick[i]].size());
    std::vector<int> invariant(count, 1);
    for (std::size_t i = 0; i < primes.size(); ++i) {
      const auto& parts = per_prime[i][pick[i]];
      for (std::size_t j = 0; j < parts.size(); ++j) {
        int power = 1;
        for (int rep = 0; rep < parts[j]; ++rep) power *= primes[i].first;
        invariant[j] *= power;
      }
    }
    // invariant[] is descending by divisibility; store ascending
    std::reverse(invariant.begin(), invariant.end());
    groups.push_back(std::move(invariant));

    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == per_prime[i].size()) {
      pick[i] = 0;
      ++i;
    }
    if (i == pick.size()) break;
  }

  std::sort(groups.begin(), groups.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
  return groups;
}

}  // namespace forge
