#pragma once

// JSON reports. Exact values are written as rational strings next to a
// truncated decimal; key order is fixed so identical runs give identical bytes.

#include <json.hpp>

#include "binlb/adversary.hpp"
#include "binlb/analysis.hpp"
#include "binlb/verify.hpp"

namespace binlb {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

/// {"exact": "8533/2352", "decimal": "3.627976190476190"}
Json rational_json(const Rational& q, unsigned digits = 15);
/// {"base": ..., "atoms": [{"exponent": "24", "coefficient": "1/7"}]}
Json layered_json(const LayeredValue& v);
Json affine_json(const Affine& a);
Json contents_json(const UnionContents& s);

Json stats_json(const TranscriptStats& s);
/// Items (id, batch, large) and placements of every line.
Json transcript_json(const Transcript& tr);
Json adversary_json(const AdversaryReport& r);
Json weight_check_json(const WeightPriceCheck& c);
Json chain_json(const ChainCheck& c);
Json certificate_json(const PriceCertificate& cert);
Json verify_json(const VerifyResult& r, const VerifyOptions& o);
Json optimize_json(const OptimizeResult& r, const std::vector<SweepRow>& sweep);

/// Top-level report: {"schema": 1, "command": ..., <body fields>}.
Json envelope(const std::string& command, const Json& body);

}  // namespace binlb
