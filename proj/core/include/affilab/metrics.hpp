#pragma once

// Design-quality metrics: oracle improvement rate, cross-antigen CDR
// similarity, and naturalness under the committed sequence Markov chain.

#include <cstdint>
#include <vector>

#include "affilab/sequence.hpp"
#include "affilab/tables.hpp"

namespace affilab {

// Fraction of designs whose exact oracle energy is strictly below their
// wildtype's.  Inputs are paired per design.
double metric_imp(const std::vector<double>& design_dg, const std::vector<double>& wildtype_dg);

// Mean per-position identity over CDR positions, taken over every pair of
// designs that target different antigens.  Lower means more antigen-specific
// designs.  Requires designs for at least two antigens.
double metric_sim(const std::vector<std::vector<Sequence>>& designs_by_antigen,
                  const std::vector<std::uint32_t>& cdr_positions);

struct NatReport {
    double nat = 0.0;    // mean inverse perplexity, in (0, 1]
    bool floored = false; // a transition probability hit the 1e-6 floor
};

// Per design: perplexity = exp(-(1/N) Σ_{i≥1} log P(residue_i | residue_{i-1}))
// under the committed natural-antibody transition table; Nat is the mean of
// 1/perplexity.  Transition probabilities are floored at 1e-6.
NatReport metric_nat(const std::vector<Sequence>& designs,
                     const WorldTables& tables = baked_tables());

// Median with the even-size convention (mean of the middle two).
double median(std::vector<double> values);

} // namespace affilab
