#include "imea/bandit.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace imea {

double exploration_weight(std::size_t generation) {
  if (generation == 0) throw std::invalid_argument("generation counter starts at 1");
  const double g = static_cast<double>(generation);
  return 1.0 / (g * g * g);
}

OperatorBandit::OperatorBandit(std::size_t arm_count, std::size_t window)
    : window_(window), windows_(arm_count), pulls_(arm_count, 0) {
  if (arm_count == 0) throw std::invalid_argument("bandit needs at least one arm");
  if (window == 0) throw std::invalid_argument("sliding window must hold at least one reward");
}

void OperatorBandit::set_generation(std::size_t generation) {
  if (generation == 0) throw std::invalid_argument("generation counter starts at 1");
  generation_ = generation;
}

double OperatorBandit::exploration_weight() const { return imea::exploration_weight(generation_); }

double OperatorBandit::window_sum(std::size_t arm) const {
  const auto& w = windows_.at(arm);
  return std::accumulate(w.begin(), w.end(), 0.0);
}

double OperatorBandit::score(std::size_t arm) const {
  const double n = static_cast<double>(pulls_.at(arm));
  if (n == 0.0) throw std::logic_error("UCB score undefined for an unpulled arm");
  const double bonus = std::sqrt(2.0 * std::log(static_cast<double>(total_)) / n);
  return window_sum(arm) + exploration_weight() * bonus;
}

std::size_t OperatorBandit::select() const {
  for (std::size_t a = 0; a < pulls_.size(); ++a) {
    if (pulls_[a] == 0) return a;
  }
  std::size_t best = 0;
  double best_score = score(0);
  for (std::size_t a = 1; a < pulls_.size(); ++a) {
    const double s = score(a);
    if (s > best_score) {
      best_score = s;
      best = a;
    }
  }
  return best;
}

void OperatorBandit::record(std::size_t arm, double reward) {
  if (arm >= windows_.size()) throw std::out_of_range("unknown bandit arm " + std::to_string(arm));
  if (!(reward >= 0.0)) throw std::invalid_argument("bandit rewards must be non-negative");
  auto& w = windows_[arm];
  w.push_back(reward);
  if (w.size() > window_) w.pop_front();
  ++pulls_[arm];
  ++total_;
}

}  // namespace imea
