#include "infodens/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "infodens/quadrature.hpp"

namespace infodens {

void ProbVector::validate() const {
    if (p.empty()) throw std::invalid_argument("probability vector is empty");
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("probability entry outside [0,1]: " +
                                        std::to_string(v));
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("probability vector sums to " +
                                    std::to_string(sum) + ", not 1");
}

ProbVector make_prob_vector(std::vector<double> entries) {
    ProbVector v{std::move(entries)};
    v.validate();
    return v;
}

ProbVector parse_prob_vector(const std::string& text) {
    std::vector<double> entries;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        double v = std::stod(tok, &pos);
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos])))
            ++pos;
        if (pos != tok.size())
            throw std::invalid_argument("bad probability entry: " + tok);
        entries.push_back(v);
    }
    return make_prob_vector(std::move(entries));
}

void DoublyStochastic::validate() const {
    if (L.rows != L.cols || L.rows == 0)
        throw std::invalid_argument("doubly stochastic matrix must be square");
    for (size_t i = 0; i < L.rows; ++i) {
        double row = 0.0;
        for (size_t j = 0; j < L.cols; ++j) {
            if (L(i, j) < 0.0)
                throw std::invalid_argument("doubly stochastic entry < 0");
            row += L(i, j);
        }
        if (std::fabs(row - 1.0) > 1e-12)
            throw std::invalid_argument("row sum " + std::to_string(row) + " != 1");
    }
    for (size_t j = 0; j < L.cols; ++j) {
        double col = 0.0;
        for (size_t i = 0; i < L.rows; ++i) col += L(i, j);
        if (std::fabs(col - 1.0) > 1e-12)
            throw std::invalid_argument("column sum " + std::to_string(col) + " != 1");
    }
}

bool majorizes(const ProbVector& p, const ProbVector& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("majorizes: length mismatch");
    std::vector<double> ps = p.p, qs = q.p;
    std::sort(ps.begin(), ps.end());
    std::sort(qs.begin(), qs.end());
    double cp = 0.0, cq = 0.0;
    for (size_t j = 0; j < ps.size(); ++j) {
        cp += ps[j];
        cq += qs[j];
        if (cp < cq - 1e-12) return false;
    }
    return true;
}

ProbVector smooth(const ProbVector& q, const DoublyStochastic& L) {
    L.validate();
    if (q.size() != L.L.rows)
        throw std::invalid_argument("smooth: dimension mismatch");
    ProbVector out;
    out.p.assign(q.size(), 0.0);
    for (size_t j = 0; j < L.L.cols; ++j) {
        double acc = 0.0;
        for (size_t i = 0; i < L.L.rows; ++i) acc += q.p[i] * L.L(i, j);
        out.p[j] = acc;
    }
    // guard against fp drift before the invariant check
    for (double& v : out.p) v = std::clamp(v, 0.0, 1.0);
    if (!majorizes(out, q))
        throw NumericError("smoothing violated the majorization order");
    return out;
}

DiscreteMeasures discrete_measures(const ProbVector& p) {
    DiscreteMeasures m;
    for (double v : p.p) {
        if (v > 0.0) m.h -= v * std::log(v);
        m.h_star += v * v;
        m.h_mode = std::max(m.h_mode, v);
    }
    return m;
}

bool mixture_order_check(const ProbVector& p, const ProbVector& q, double lambda) {
    if (lambda < 0.0 || lambda > 1.0)
        throw std::invalid_argument("mixture weight outside [0,1]");
    ProbVector mix;
    mix.p.resize(p.size());
    for (size_t i = 0; i < p.size(); ++i)
        mix.p[i] = lambda * p.p[i] + (1.0 - lambda) * q.p[i];
    return majorizes(p, mix) && majorizes(mix, q);
}

DoublyStochastic random_birkhoff(int k, SplitMix64& rng, int max_perms) {
    if (k < 1 || max_perms < 1)
        throw std::invalid_argument("random_birkhoff: bad dimensions");
    int nperm = 1 + static_cast<int>(rng.next_u64() % static_cast<uint64_t>(max_perms));

    std::vector<double> weights(nperm);
    double wsum = 0.0;
    for (double& w : weights) {
        w = rng.next_unit();
        wsum += w;
    }
    for (double& w : weights) w /= wsum;

    DoublyStochastic ds;
    ds.L = Mat(k, k);
    std::vector<size_t> perm(k);
    for (int t = 0; t < nperm; ++t) {
        std::iota(perm.begin(), perm.end(), size_t{0});
        // Fisher-Yates on the deterministic stream
        for (size_t i = perm.size(); i > 1; --i) {
            size_t j = rng.next_u64() % i;
            std::swap(perm[i - 1], perm[j]);
        }
        for (int i = 0; i < k; ++i) ds.L(i, perm[i]) += weights[t];
    }
    return ds;
}

ProbVector random_prob_vector(int k, SplitMix64& rng) {
    if (k < 1) throw std::invalid_argument("random_prob_vector: k < 1");
    std::vector<double> v(k);
    double sum = 0.0;
    for (double& x : v) {
        x = -std::log(rng.next_unit()); // exponential spacings -> flat Dirichlet
        sum += x;
    }
    for (double& x : v) x /= sum;
    return make_prob_vector(std::move(v));
}

} // namespace infodens
