#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

namespace imea {

// Sliding-window UCB1 over a fixed list of arms. An arm's value Q(a) is the
// sum of its last `window` rewards; the exploration bonus
// sqrt(2 ln t / N(a)) is scaled by generation^-3.
class OperatorBandit {
 public:
  OperatorBandit(std::size_t arm_count, std::size_t window = 100);

  std::size_t arm_count() const noexcept { return windows_.size(); }
  std::size_t window_size() const noexcept { return window_; }

  // Unpulled arms are chosen first, in arm order; otherwise argmax of the
  // UCB score with ties to the lowest index.
  std::size_t select() const;
  void record(std::size_t arm, double reward);

  // Generation counter starting at 1.
  void set_generation(std::size_t generation);
  std::size_t generation() const noexcept { return generation_; }
  double exploration_weight() const;

  double window_sum(std::size_t arm) const;
  const std::deque<double>& window(std::size_t arm) const { return windows_.at(arm); }
  std::size_t pulls(std::size_t arm) const { return pulls_.at(arm); }
  std::size_t total_pulls() const noexcept { return total_; }
  double score(std::size_t arm) const;

 private:
  std::size_t window_;
  std::vector<std::deque<double>> windows_;
  std::vector<std::size_t> pulls_;
  std::size_t total_ = 0;
  std::size_t generation_ = 1;
};

// exploration_weight(g) = g^-3.
double exploration_weight(std::size_t generation);

}  // namespace imea
