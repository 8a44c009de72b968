#include "binlb/algorithms.hpp"

#include <stdexcept>

namespace binlb {

namespace {

const LayeredValue& unit() {
  static const LayeredValue one(Rational(1));
  return one;
}

}  // namespace

// ---------------------------------------------------------------- CapacityIndex

void CapacityIndex::grow() {
  std::size_t leaves = leaves_ == 0 ? 64 : leaves_ * 2;
  std::vector<std::optional<LayeredValue>> tree(2 * leaves);
  for (std::size_t i = 0; i < count_; ++i) tree[leaves + i] = std::move(tree_[leaves_ + i]);
  tree_ = std::move(tree);
  leaves_ = leaves;
  for (std::size_t node = leaves_ - 1; node >= 1; --node) pull(node);
}

void CapacityIndex::pull(std::size_t node) {
  const auto& l = tree_[2 * node];
  const auto& r = tree_[2 * node + 1];
  if (!l) {
    tree_[node] = r;
  } else if (!r) {
    tree_[node] = l;
  } else {
    tree_[node] = ctx_->less(*l, *r) ? r : l;
  }
}

void CapacityIndex::push_back(LayeredValue remaining) {
  if (count_ == leaves_) grow();
  ++count_;
  set(count_ - 1, std::move(remaining));
}

void CapacityIndex::set(std::size_t bin, LayeredValue remaining) {
  std::size_t node = leaves_ + bin;
  tree_[node] = std::move(remaining);
  for (node /= 2; node >= 1; node /= 2) pull(node);
}

const LayeredValue& CapacityIndex::remaining(std::size_t bin) const { return *tree_.at(leaves_ + bin); }

std::optional<std::size_t> CapacityIndex::first_fit(const LayeredValue& item) const {
  if (count_ == 0 || !tree_[1] || ctx_->less(*tree_[1], item)) return std::nullopt;
  std::size_t node = 1;
  while (node < leaves_) {
    const auto& l = tree_[2 * node];
    node = (l && ctx_->less_equal(item, *l)) ? 2 * node : 2 * node + 1;
  }
  return node - leaves_;
}

// ---------------------------------------------------------------- NextFit

std::size_t NextFit::place(const LayeredValue& size) {
  if (bins_ > 0 && ctx_->less_equal(size, current_remaining_)) {
    current_remaining_ -= size;
    return bins_ - 1;
  }
  current_remaining_ = unit() - size;
  return bins_++;
}

// ---------------------------------------------------------------- FirstFit

std::size_t FirstFit::place(const LayeredValue& size) {
  if (auto bin = index_.first_fit(size)) {
    index_.set(*bin, index_.remaining(*bin) - size);
    return *bin;
  }
  index_.push_back(unit() - size);
  return index_.size() - 1;
}

// ---------------------------------------------------------------- BestFit

bool BestFit::ByRoomThenIndex::operator()(const Key& a, const Key& b) const {
  auto c = ctx->compare(a.remaining, b.remaining);
  if (c != 0) return c < 0;
  return a.bin < b.bin;
}

BestFit::BestFit(const ArithmeticContext& ctx) : ctx_(&ctx), by_room_(ByRoomThenIndex{&ctx}) {}

std::size_t BestFit::place(const LayeredValue& size) {
  auto it = by_room_.lower_bound(Key{size, 0});
  if (it != by_room_.end()) {
    std::size_t bin = it->bin;
    by_room_.erase(it);
    remaining_[bin] -= size;
    by_room_.insert(Key{remaining_[bin], bin});
    return bin;
  }
  std::size_t bin = remaining_.size();
  remaining_.push_back(unit() - size);
  by_room_.insert(Key{remaining_.back(), bin});
  return bin;
}

// ---------------------------------------------------------------- Harmonic

Harmonic::Harmonic(const ArithmeticContext& ctx, int h) : ctx_(&ctx), h_(h) {
  if (h < 3) throw std::invalid_argument("harmonic: h must be >= 3");
  open_.resize(static_cast<std::size_t>(h - 1));
}

int Harmonic::size_class(const LayeredValue& size) const {
  for (int i = 1; i < h_; ++i) {
    if (ctx_->greater(size, Rational(1, i + 1))) return i;
  }
  return h_;
}

std::size_t Harmonic::place(const LayeredValue& size) {
  const int cls = size_class(size);
  if (cls == h_) {
    if (small_bin_ && ctx_->less_equal(size, small_remaining_)) {
      small_remaining_ -= size;
      return *small_bin_;
    }
    small_bin_ = bins_;
    small_remaining_ = unit() - size;
    return bins_++;
  }
  auto& slot = open_[static_cast<std::size_t>(cls - 1)];
  if (slot && slot->items < cls) {
    ++slot->items;
    return slot->bin;
  }
  slot = OpenBin{bins_, 1};
  return bins_++;
}

// ---------------------------------------------------------------- WorstFit

bool WorstFit::MostRoomFirst::operator()(const Key& a, const Key& b) const {
  auto c = ctx->compare(a.remaining, b.remaining);
  if (c != 0) return c > 0;
  return a.bin < b.bin;
}

WorstFit::WorstFit(const ArithmeticContext& ctx) : ctx_(&ctx), by_room_(MostRoomFirst{&ctx}) {}

std::size_t WorstFit::place(const LayeredValue& size) {
  if (!by_room_.empty() && ctx_->less_equal(size, by_room_.begin()->remaining)) {
    std::size_t bin = by_room_.begin()->bin;
    by_room_.erase(by_room_.begin());
    remaining_[bin] -= size;
    by_room_.insert(Key{remaining_[bin], bin});
    return bin;
  }
  std::size_t bin = remaining_.size();
  remaining_.push_back(unit() - size);
  by_room_.insert(Key{remaining_.back(), bin});
  return bin;
}

// ---------------------------------------------------------------- Alternating

std::size_t Alternating::place(const LayeredValue& size) {
  const bool open_new = (seen_++ % 2) == 0;
  if (!open_new) {
    if (auto bin = index_.first_fit(size)) {
      index_.set(*bin, index_.remaining(*bin) - size);
      return *bin;
    }
  }
  index_.push_back(unit() - size);
  return index_.size() - 1;
}

// ---------------------------------------------------------------- SeededRandom

SeededRandom::SeededRandom(const ArithmeticContext& ctx, std::uint64_t seed)
    : ctx_(&ctx), seed_(seed), engine_(seed) {}

// Raw engine output is used instead of std::uniform_int_distribution so the
// sequence is identical across standard library implementations.
std::size_t SeededRandom::place(const LayeredValue& size) {
  const bool open_new = remaining_.empty() || (engine_() & 1U) == 0;
  if (!open_new) {
    for (int probe = 0; probe < 8; ++probe) {
      std::size_t bin = static_cast<std::size_t>(engine_() % remaining_.size());
      if (ctx_->less_equal(size, remaining_[bin])) {
        remaining_[bin] -= size;
        return bin;
      }
    }
  }
  remaining_.push_back(unit() - size);
  return remaining_.size() - 1;
}

// ---------------------------------------------------------------- ReplayOnly

std::unique_ptr<OnlineAlgorithm> ReplayOnly::snapshot() const {
  throw std::logic_error(name() + " does not support snapshots");
}

void ReplayOnly::restore(const OnlineAlgorithm&) {
  throw std::logic_error(name() + " does not support snapshots");
}

// ---------------------------------------------------------------- factory

std::vector<std::string> algorithm_names() {
  return {"next-fit", "first-fit", "best-fit", "harmonic", "always-new", "worst-fit", "alternating",
          "random"};
}

std::unique_ptr<OnlineAlgorithm> make_algorithm(const std::string& name, const ArithmeticContext& ctx,
                                                const AlgorithmOptions& options) {
  if (name == "next-fit") return std::make_unique<NextFit>(ctx);
  if (name == "first-fit") return std::make_unique<FirstFit>(ctx);
  if (name == "best-fit") return std::make_unique<BestFit>(ctx);
  if (name == "harmonic") return std::make_unique<Harmonic>(ctx, options.harmonic_classes);
  if (name == "always-new") return std::make_unique<AlwaysNewBin>();
  if (name == "worst-fit") return std::make_unique<WorstFit>(ctx);
  if (name == "alternating") return std::make_unique<Alternating>(ctx);
  if (name == "random") return std::make_unique<SeededRandom>(ctx, options.seed);
  throw std::invalid_argument("unknown algorithm: " + name);
}

AlgorithmFactory algorithm_factory(const std::string& name, const ArithmeticContext& ctx,
                                   const AlgorithmOptions& options) {
  make_algorithm(name, ctx, options);  // validate eagerly
  return [name, &ctx, options] { return make_algorithm(name, ctx, options); };
}

}  // namespace binlb
