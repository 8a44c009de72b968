#pragma once

// Items, bins, the online algorithm contract and transcripts of play over the
// branching input tree.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "binlb/layered.hpp"

namespace binlb {

enum class BatchKind : std::uint8_t { C, A, B11, B21, B22, B31, B32 };

enum class Branch : std::uint8_t { trunk, branch1, branch2, branch3 };

/// A batch of the input tree. `level` is j for C_j batches and 0 otherwise.
/// Every batch end is also a stopping point of the adversary.
struct BatchLabel {
  BatchKind kind = BatchKind::A;
  int level = 0;

  static BatchLabel c(int j) { return {BatchKind::C, j}; }
  static BatchLabel of(BatchKind kind) { return {kind, 0}; }

  /// "C3", "A", "B21", ...
  std::string name() const;
  Branch branch() const;

  friend bool operator==(const BatchLabel&, const BatchLabel&) = default;
  friend auto operator<=>(const BatchLabel&, const BatchLabel&) = default;
};

using StoppingPoint = BatchLabel;

BatchLabel parse_batch_label(const std::string& name);
std::string to_string(Branch b);

/// All stopping points of the tree for a given t in presentation order:
/// C_t ... C_2, A, B11, B21, B22, B31, B32.
std::vector<StoppingPoint> stopping_points(int t);

struct Item {
  std::size_t id = 0;
  BatchLabel batch;
  LayeredValue size;
  /// A-item that was placed as the first item of a bin. Harness-side
  /// bookkeeping only; algorithms never see it.
  bool large = false;

  Branch branch() const { return batch.branch(); }
};

struct BinState {
  std::size_t id = 0;
  std::vector<std::size_t> contents;
  LayeredValue load;
};

/// Thrown when a placement would make a bin's load exceed 1.
class OverflowRejection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bins of one line of play. Copyable; copies are independent forks.
class PackingState {
 public:
  explicit PackingState(const ArithmeticContext& ctx) : ctx_(&ctx) {}

  /// choice == bin_count() opens a new bin. Returns true when it did.
  bool place(const Item& item, std::size_t choice);

  std::size_t bin_count() const { return bins_.size(); }
  const std::vector<BinState>& bins() const { return bins_; }
  std::size_t item_count() const;

 private:
  const ArithmeticContext* ctx_;
  std::vector<BinState> bins_;
};

/// Deterministic online algorithm: sees sizes one at a time and answers a bin
/// index in [0, bin_count()], where bin_count() means "open a new bin".
class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;

  virtual std::string name() const = 0;
  virtual std::size_t place(const LayeredValue& size) = 0;
  virtual std::size_t bin_count() const = 0;

  /// Algorithms that cannot snapshot are forked by replaying the trunk.
  virtual bool can_snapshot() const { return true; }
  virtual std::unique_ptr<OnlineAlgorithm> snapshot() const = 0;
  virtual void restore(const OnlineAlgorithm& snapshot) = 0;
};

/// Implements snapshot/restore by copying the derived object.
template <class Derived>
class CopyableAlgorithm : public OnlineAlgorithm {
 public:
  std::unique_ptr<OnlineAlgorithm> snapshot() const override {
    return std::make_unique<Derived>(static_cast<const Derived&>(*this));
  }
  void restore(const OnlineAlgorithm& snap) override {
    const auto* typed = dynamic_cast<const Derived*>(&snap);
    if (typed == nullptr) throw std::invalid_argument("restore: snapshot of a different algorithm");
    static_cast<Derived&>(*this) = *typed;
  }
};

struct Placement {
  std::size_t item = 0;
  std::size_t bin = 0;
};

/// One stopping point inside a line of play: the batch and the half-open
/// range of placements that belong to it.
struct BatchSpan {
  BatchLabel label;
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct LineTranscript {
  Branch branch = Branch::trunk;
  std::vector<Placement> placements;
  std::vector<BatchSpan> batches;
};

/// Complete record of one algorithm over the input tree. Branch transcripts
/// only hold the placements after the fork; the trunk is shared.
struct Transcript {
  int t = 0;
  std::vector<Item> items;  // indexed by item id
  LineTranscript trunk;
  std::array<LineTranscript, 3> branches;

  const LineTranscript& line(Branch b) const;
};

struct TranscriptStats {
  std::map<int, std::int64_t> nu_c;  // j -> bins opened during C_j
  std::int64_t nu_1 = 0;
  std::int64_t nu_11 = 0, nu_21 = 0, nu_22 = 0, nu_31 = 0, nu_32 = 0;
  std::int64_t n_large = 0;  // A-items placed as the first item of a bin
  std::int64_t delta = 0;    // sum_{j=1..t} nu_j
  /// Bins used at each stopping point.
  std::map<StoppingPoint, std::int64_t> cost;

  std::int64_t nu(const StoppingPoint& p) const;
};

/// Recomputes every count from the raw placements.
TranscriptStats stats(const Transcript& transcript);

}  // namespace binlb
