#include "binlb/packing.hpp"

#include <algorithm>

namespace binlb {

std::string BatchLabel::name() const {
  switch (kind) {
    case BatchKind::C: return "C" + std::to_string(level);
    case BatchKind::A: return "A";
    case BatchKind::B11: return "B11";
    case BatchKind::B21: return "B21";
    case BatchKind::B22: return "B22";
    case BatchKind::B31: return "B31";
    case BatchKind::B32: return "B32";
  }
  return "?";
}

Branch BatchLabel::branch() const {
  switch (kind) {
    case BatchKind::C:
    case BatchKind::A: return Branch::trunk;
    case BatchKind::B11: return Branch::branch1;
    case BatchKind::B21:
    case BatchKind::B22: return Branch::branch2;
    case BatchKind::B31:
    case BatchKind::B32: return Branch::branch3;
  }
  return Branch::trunk;
}

BatchLabel parse_batch_label(const std::string& name) {
  if (name == "A") return BatchLabel::of(BatchKind::A);
  if (name == "B11") return BatchLabel::of(BatchKind::B11);
  if (name == "B21") return BatchLabel::of(BatchKind::B21);
  if (name == "B22") return BatchLabel::of(BatchKind::B22);
  if (name == "B31") return BatchLabel::of(BatchKind::B31);
  if (name == "B32") return BatchLabel::of(BatchKind::B32);
  if (name.size() > 1 && name[0] == 'C') return BatchLabel::c(std::stoi(name.substr(1)));
  throw std::invalid_argument("unknown batch label: " + name);
}

std::string to_string(Branch b) {
  switch (b) {
    case Branch::trunk: return "trunk";
    case Branch::branch1: return "branch1";
    case Branch::branch2: return "branch2";
    case Branch::branch3: return "branch3";
  }
  return "?";
}

std::vector<StoppingPoint> stopping_points(int t) {
  std::vector<StoppingPoint> out;
  for (int j = t; j >= 2; --j) out.push_back(BatchLabel::c(j));
  for (auto kind : {BatchKind::A, BatchKind::B11, BatchKind::B21, BatchKind::B22, BatchKind::B31,
                    BatchKind::B32}) {
    out.push_back(BatchLabel::of(kind));
  }
  return out;
}

bool PackingState::place(const Item& item, std::size_t choice) {
  if (choice > bins_.size()) {
    throw std::out_of_range("placement into bin " + std::to_string(choice) + " but only " +
                            std::to_string(bins_.size()) + " bins are open");
  }
  const bool opened = choice == bins_.size();
  LayeredValue load = opened ? item.size : bins_[choice].load + item.size;
  if (ctx_->greater(load, Rational(1))) {
    throw OverflowRejection("item " + std::to_string(item.id) + " (" + item.batch.name() +
                            ") overflows bin " + std::to_string(choice) + ": load would be " +
                            load.to_string());
  }
  if (opened) bins_.push_back(BinState{choice, {}, {}});
  auto& bin = bins_[choice];
  bin.contents.push_back(item.id);
  bin.load = std::move(load);
  return opened;
}

std::size_t PackingState::item_count() const {
  std::size_t n = 0;
  for (const auto& b : bins_) n += b.contents.size();
  return n;
}

const LineTranscript& Transcript::line(Branch b) const {
  switch (b) {
    case Branch::trunk: return trunk;
    case Branch::branch1: return branches[0];
    case Branch::branch2: return branches[1];
    case Branch::branch3: return branches[2];
  }
  return trunk;
}

std::int64_t TranscriptStats::nu(const StoppingPoint& p) const {
  switch (p.kind) {
    case BatchKind::C: {
      auto it = nu_c.find(p.level);
      return it == nu_c.end() ? 0 : it->second;
    }
    case BatchKind::A: return nu_1;
    case BatchKind::B11: return nu_11;
    case BatchKind::B21: return nu_21;
    case BatchKind::B22: return nu_22;
    case BatchKind::B31: return nu_31;
    case BatchKind::B32: return nu_32;
  }
  return 0;
}

namespace {

// Replays one line; `bins` is the number of bins open before it starts.
void replay_line(const Transcript& tr, const LineTranscript& line, std::size_t bins,
                 TranscriptStats& out) {
  for (const auto& span : line.batches) {
    std::int64_t opened = 0;
    for (std::size_t i = span.begin; i < span.end; ++i) {
      const auto& p = line.placements[i];
      if (p.bin > bins) throw std::logic_error("transcript skips a bin index");
      if (p.bin == bins) {
        ++bins;
        ++opened;
        if (tr.items.at(p.item).batch.kind == BatchKind::A) ++out.n_large;
      }
    }
    switch (span.label.kind) {
      case BatchKind::C: out.nu_c[span.label.level] = opened; break;
      case BatchKind::A: out.nu_1 = opened; break;
      case BatchKind::B11: out.nu_11 = opened; break;
      case BatchKind::B21: out.nu_21 = opened; break;
      case BatchKind::B22: out.nu_22 = opened; break;
      case BatchKind::B31: out.nu_31 = opened; break;
      case BatchKind::B32: out.nu_32 = opened; break;
    }
    out.cost[span.label] = static_cast<std::int64_t>(bins);
  }
}

std::size_t bins_used(const LineTranscript& line, std::size_t start) {
  std::size_t bins = start;
  for (const auto& p : line.placements) bins = std::max(bins, p.bin + 1);
  return bins;
}

}  // namespace

TranscriptStats stats(const Transcript& transcript) {
  TranscriptStats out;
  replay_line(transcript, transcript.trunk, 0, out);
  const std::size_t trunk_bins = bins_used(transcript.trunk, 0);
  for (const auto& branch : transcript.branches) replay_line(transcript, branch, trunk_bins, out);
  out.delta = out.nu_1;
  for (const auto& [j, v] : out.nu_c) out.delta += v;
  return out;
}

}  // namespace binlb
