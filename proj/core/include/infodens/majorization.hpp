#pragma once

#include <string>
#include <vector>

#include "infodens/matrix.hpp"
#include "infodens/rng.hpp"

namespace infodens {

// discrete majorization: p is majorized by q (p ~ "less informative") when
// the ascending-sorted prefix sums of p dominate those of q at every index

struct ProbVector {
    std::vector<double> p;

    size_t size() const { return p.size(); }
    void validate() const; // entries in [0,1], sum 1 within 1e-12
};

ProbVector make_prob_vector(std::vector<double> entries);

// parses "0.2,0.3,0.5"
ProbVector parse_prob_vector(const std::string& text);

struct DoublyStochastic {
    Mat L;

    void validate() const; // non-negative, row and column sums 1 within 1e-12
};

struct DiscreteMeasures {
    double h = 0.0;      // -sum p_i log p_i, natural log, 0 log 0 = 0
    double h_star = 0.0; // sum p_i^2
    double h_mode = 0.0; // max p_i
};

// true when p is majorized by q: ascending-sort prefix sums of p >= those of
// q at every j, slack 1e-12
bool majorizes(const ProbVector& p, const ProbVector& q);

// p = qL; post-checks p ≺ q
ProbVector smooth(const ProbVector& q, const DoublyStochastic& L);

DiscreteMeasures discrete_measures(const ProbVector& p);

// p ≺ q implies p ≺ λp + (1-λ)q ≺ q; returns whether both relations hold
bool mixture_order_check(const ProbVector& p, const ProbVector& q, double lambda);

// convex combination of at most max_perms random permutation matrices
DoublyStochastic random_birkhoff(int k, SplitMix64& rng, int max_perms = 5);

ProbVector random_prob_vector(int k, SplitMix64& rng);

} // namespace infodens
