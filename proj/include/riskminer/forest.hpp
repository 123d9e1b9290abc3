#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "riskminer/features.hpp"

namespace riskminer {

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::vector<int> counts;  // leaf class histogram
};

struct Tree {
  std::vector<TreeNode> nodes;  // node 0 is the root
};

struct ForestConfig {
  int n_trees = 100;
  int max_depth = -1;  // -1 = unlimited
  int min_leaf = 1;
  int mtry = -1;  // features tried per node; -1 = ceil(sqrt(F))
  std::uint64_t seed = 0;
};

struct ForestModel {
  std::vector<std::string> labels;  // sorted distinct
  std::vector<Tree> trees;
  ForestConfig config;
  int n_features = 0;
};

// Bootstrapped CART trees grown on Gini impurity; candidate splits are
// midpoints between distinct values of mtry sampled features; ties prefer the
// lowest feature index, then the lowest threshold. x[f] <= threshold goes left.
ForestModel train_forest(const Matrix& x, const std::vector<std::string>& labels,
                         const ForestConfig& config);

// (majority-vote label, per-class vote fractions); ties go to the
// lexicographically smaller label.
std::pair<std::string, Vector> predict_forest(const ForestModel& model,
                                              const Vector& x);

}  // namespace riskminer
