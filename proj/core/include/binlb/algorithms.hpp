#pragma once

// Reference deterministic online bin packing algorithms. Every algorithm
// keeps its own view of the bins (remaining capacities) and breaks ties
// towards the lowest bin index unless documented otherwise.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "binlb/layered.hpp"
#include "binlb/packing.hpp"

namespace binlb {

/// Max-tree over remaining bin capacities; answers "lowest-indexed bin with
/// at least this much room" in O(log n) exact comparisons.
class CapacityIndex {
 public:
  explicit CapacityIndex(const ArithmeticContext& ctx) : ctx_(&ctx) {}

  std::size_t size() const { return count_; }
  void push_back(LayeredValue remaining);
  void set(std::size_t bin, LayeredValue remaining);
  const LayeredValue& remaining(std::size_t bin) const;
  std::optional<std::size_t> first_fit(const LayeredValue& item) const;

 private:
  void grow();
  void pull(std::size_t node);

  const ArithmeticContext* ctx_;
  std::size_t count_ = 0;
  std::size_t leaves_ = 0;
  std::vector<std::optional<LayeredValue>> tree_;  // 1-based heap layout
};

class NextFit final : public CopyableAlgorithm<NextFit> {
 public:
  explicit NextFit(const ArithmeticContext& ctx) : ctx_(&ctx) {}
  std::string name() const override { return "next-fit"; }
  std::size_t place(const LayeredValue& size) override;
  std::size_t bin_count() const override { return bins_; }

 private:
  const ArithmeticContext* ctx_;
  std::size_t bins_ = 0;
  LayeredValue current_remaining_;
};

class FirstFit final : public CopyableAlgorithm<FirstFit> {
 public:
  explicit FirstFit(const ArithmeticContext& ctx) : index_(ctx) {}
  std::string name() const override { return "first-fit"; }
  std::size_t place(const LayeredValue& size) override;
  std::size_t bin_count() const override { return index_.size(); }

 private:
  CapacityIndex index_;
};

/// Feasible bin with the largest load (= smallest remaining room).
class BestFit final : public CopyableAlgorithm<BestFit> {
 public:
  explicit BestFit(const ArithmeticContext& ctx);
  std::string name() const override { return "best-fit"; }
  std::size_t place(const LayeredValue& size) override;
  std::size_t bin_count() const override { return remaining_.size(); }

 private:
  struct Key {
    LayeredValue remaining;
    std::size_t bin;
  };
  struct ByRoomThenIndex {
    const ArithmeticContext* ctx;
    bool operator()(const Key& a, const Key& b) const;
  };

  const ArithmeticContext* ctx_;
  std::vector<LayeredValue> remaining_;
  std::set<Key, ByRoomThenIndex> by_room_;
};

/// Items in (1/(i+1), 1/i] for i < h go to class-i bins holding i items;
/// items of size at most 1/h share next-fit bins.
class Harmonic final : public CopyableAlgorithm<Harmonic> {
 public:
  Harmonic(const ArithmeticContext& ctx, int h);
  std::string name() const override { return "harmonic(" + std::to_string(h_) + ")"; }
  std::size_t place(const LayeredValue& size) override;
  std::size_t bin_count() const override { return bins_; }

  /// 1..h-1, or h for the small class.
  int size_class(const LayeredValue& size) const;

 private:
  struct OpenBin {
    std::size_t bin = 0;
    int items = 0;
  };

  const ArithmeticContext* ctx_;
  int h_;
  std::size_t bins_ = 0;
  std::vector<std::optional<OpenBin>> open_;  // index = class - 1
  std::optional<std::size_t> small_bin_;
  LayeredValue small_remaining_;
};

/// Stress: every item opens a new bin.
class AlwaysNewBin final : public CopyableAlgorithm<AlwaysNewBin> {
 public:
  std::string name() const override { return "always-new"; }
  std::size_t place(const LayeredValue&) override { return bins_++; }
  std::size_t bin_count() const override { return bins_; }

 private:
  std::size_t bins_ = 0;
};

/// Stress: never opens a bin while any bin has room; picks the emptiest bin
/// (lowest index among equals).
class WorstFit final : public CopyableAlgorithm<WorstFit> {
 public:
  explicit WorstFit(const ArithmeticContext& ctx);
  std::string name() const override { return "worst-fit"; }
  std::size_t place(const LayeredValue& size) override;
  std::size_t bin_count() const override { return remaining_.size(); }

 private:
  struct Key {
    LayeredValue remaining;
    std::size_t bin;
  };
  struct MostRoomFirst {
    const ArithmeticContext* ctx;
    bool operator()(const Key& a, const Key& b) const;
  };

  const ArithmeticContext* ctx_;
  std::vector<LayeredValue> remaining_;
  std::set<Key, MostRoomFirst> by_room_;
};

/// Stress: even-numbered items open a new bin, odd-numbered items go first-fit.
class Alternating final : public CopyableAlgorithm<Alternating> {
 public:
  explicit Alternating(const ArithmeticContext& ctx) : index_(ctx) {}
  std::string name() const override { return "alternating"; }
  std::size_t place(const LayeredValue& size) override;
  std::size_t bin_count() const override { return index_.size(); }

 private:
  CapacityIndex index_;
  std::uint64_t seen_ = 0;
};

/// Stress: deterministic given the seed. Opens a new bin with probability
/// 1/2, otherwise probes up to eight random bins and takes the first that fits.
class SeededRandom final : public CopyableAlgorithm<SeededRandom> {
 public:
  SeededRandom(const ArithmeticContext& ctx, std::uint64_t seed);
  std::string name() const override { return "random(" + std::to_string(seed_) + ")"; }
  std::size_t place(const LayeredValue& size) override;
  std::size_t bin_count() const override { return remaining_.size(); }

 private:
  const ArithmeticContext* ctx_;
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::vector<LayeredValue> remaining_;
};

/// Wraps an algorithm and hides its snapshot support, forcing the harness to
/// fork by replay.
class ReplayOnly final : public OnlineAlgorithm {
 public:
  explicit ReplayOnly(std::unique_ptr<OnlineAlgorithm> inner) : inner_(std::move(inner)) {}
  std::string name() const override { return inner_->name(); }
  std::size_t place(const LayeredValue& size) override { return inner_->place(size); }
  std::size_t bin_count() const override { return inner_->bin_count(); }
  bool can_snapshot() const override { return false; }
  std::unique_ptr<OnlineAlgorithm> snapshot() const override;
  void restore(const OnlineAlgorithm&) override;

 private:
  std::unique_ptr<OnlineAlgorithm> inner_;
};

struct AlgorithmOptions {
  int harmonic_classes = 7;
  std::uint64_t seed = 1;
};

using AlgorithmFactory = std::function<std::unique_ptr<OnlineAlgorithm>()>;

/// Names: next-fit, first-fit, best-fit, harmonic, always-new, worst-fit,
/// alternating, random.
std::unique_ptr<OnlineAlgorithm> make_algorithm(const std::string& name,
                                                const ArithmeticContext& ctx,
                                                const AlgorithmOptions& options = {});
AlgorithmFactory algorithm_factory(const std::string& name, const ArithmeticContext& ctx,
                                   const AlgorithmOptions& options = {});
std::vector<std::string> algorithm_names();

}  // namespace binlb
