#pragma once

#include <vector>

#include "forge/design.hpp"

namespace forge {

// Positive integer weight per master point.
struct Weighting {
  std::vector<int> weights;

  static Weighting uniform(int n, int w) {
    return Weighting{std::vector<int>(n, w)};
  }
};

// What apply_wfc asks a supplier for: a K-GDD replacing one master block.
// Local point ids are row-major by block position then copy index: position
// j of the block owns the contiguous range starting at the sum of the
// preceding weights. `required` lists prescribed transversals, each as a
// copy index per block position.
struct IngredientRequest {
  Block master_block;               // ascending master point ids
  std::vector<int> weights;         // aligned with master_block
  std::vector<std::vector<int>> required;

  int expanded_size() const;
  int local_base(int position) const;  // first local id of the position
  Block required_as_block(int r) const;
};

class IngredientSupplier {
 public:
  virtual ~IngredientSupplier() = default;

  // Must return a design whose group `j` is exactly the local id range of
  // position j, verifying as a GDD with sizes in block_sizes(), containing
  // every required block verbatim. Raises SupplierFailure when it has no
  // ingredient for the requested type.
  virtual Design resolve(const IngredientRequest& request) const = 0;

  virtual const BlockSizeSet& block_sizes() const = 0;
};

// Built-in supplier backing uniform weights with build_td: a block of size b
// with weight u everywhere is filled by a TD(b, u) (the single full block
// when u = 1), aligned onto any required transversals.
class TdSupplier : public IngredientSupplier {
 public:
  explicit TdSupplier(BlockSizeSet K) : K_(std::move(K)) {}

  Design resolve(const IngredientRequest& request) const override;
  const BlockSizeSet& block_sizes() const override { return K_; }

 private:
  BlockSizeSet K_;
};

struct WfcResult {
  Design design;
  // Per master block, the post-canonical output indices of the blocks that
  // realized that block's required transversals (in request order).
  std::vector<std::vector<int>> stipulated;
};

// Wilson's Fundamental Construction: replace every master point x by w(x)
// copies and every master block by a supplier ingredient on those copies.
// Output groups are the expanded master groups (sizes w_G); the expanded
// point (x, i) gets the row-major id prefix_weight(x) + i. `stipulations`
// optionally prescribes transversals per master block index.
WfcResult apply_wfc(const Design& master, const Weighting& w,
                    const IngredientSupplier& supplier,
                    const std::vector<std::vector<std::vector<int>>>&
                        stipulations = {});

// Relabels points within each group of `ing` so that the j-th listed
// disjoint block lands exactly on the j-th target transversal. Group sets
// are preserved, so the result verifies iff the input does.
Design align_ingredient(const Design& ing, const std::vector<int>& disjoint,
                        const std::vector<Block>& targets);

// Relabels `ing` onto the request's local coordinates, matching groups to
// block positions by size (first unused group of each size, in canonical
// order), then aligns any required transversals onto disjoint blocks found
// in the ingredient. The file-backed supplier is built on this.
Design fit_ingredient_to_request(const Design& ing,
                                 const IngredientRequest& request);

}  // namespace forge
