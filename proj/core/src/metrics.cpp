#include "walkscan/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace walkscan {

double harmonic_mean(double a, double b) {
    if (a + b == 0.0) return 0.0;
    return 2.0 * a * b / (a + b);
}

F1Report f1_score(const NodeSet& found, const NodeSet& target) {
    if (target.empty())
        throw std::invalid_argument("f1_score: empty target community");
    F1Report r;
    r.intersection = intersection_size(found, target);
    r.precision = found.empty() ? 0.0
                                : static_cast<double>(r.intersection) / found.size();
    r.recall = static_cast<double>(r.intersection) / target.size();
    r.f1 = harmonic_mean(r.precision, r.recall);
    return r;
}

ConductanceReport conductance_report(const Graph& g, const NodeSet& x) {
    ConductanceReport r;
    if (x.empty() || x.size() == g.node_count()) {
        r.degenerate = true;
        return r;
    }
    for (NodeId v : x) {
        r.volume += g.degree(v);
        for (NodeId u : g.neighbors(v)) {
            if (u == v) continue;
            if (!x.contains(u)) ++r.cut;
        }
    }
    r.complement_volume = g.total_volume() - r.volume;
    std::size_t denom = std::min(r.volume, r.complement_volume);
    if (denom == 0) {
        r.degenerate = true;
        return r;
    }
    r.value = static_cast<double>(r.cut) / static_cast<double>(denom);
    return r;
}

double conductance(const Graph& g, const NodeSet& x) {
    return conductance_report(g, x).value;
}

}  // namespace walkscan
