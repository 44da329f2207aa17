#pragma once

// Logarithmic and meromorphic tangent bundles of the ambient spaces handled
// here, as sums of line bundles.

#include "cohiggs/rational.hpp"

#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace cohiggs {

enum class Ambient { P1Points, PnHyperplanes, QuadricLines, QuadricTMinusD, P1Meromorphic };

struct LogTangentDescriptor {
    Ambient ambient = Ambient::P1Points;
    int n = 1;                     // dimension of P^n
    int m = 0;                     // number of points or hyperplanes
    int a = 0, b = 0;              // lines of each ruling on the quadric
    std::vector<int> pole_orders;  // meromorphic: k_i, or a single l
};

/// Line bundle O(d_1, ..., d_s); one degree on P^n, a bidegree on P^1 x P^1.
using LineBundle = std::vector<int>;

struct LogTangentBundle {
    std::vector<LineBundle> summands;

    /// The twist k when the bundle is a single line bundle on P^1.
    [[nodiscard]] std::optional<int> twist() const {
        if (summands.size() == 1 && summands[0].size() == 1) return summands[0][0];
        return std::nullopt;
    }

    [[nodiscard]] std::vector<std::string> labels() const {
        std::vector<std::string> out;
        for (const auto& l : summands) {
            bool trivial = true;
            for (int d : l) trivial = trivial && d == 0;
            if (trivial && l.size() == 1) {
                out.emplace_back("O");
                continue;
            }
            std::string s = "O(";
            for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
            out.push_back(s + ")");
        }
        return out;
    }

    [[nodiscard]] std::string str() const {
        std::string s;
        for (const auto& l : labels()) s += (s.empty() ? "" : " + ") + l;
        return s;
    }
};

inline LogTangentBundle log_tangent_catalog(const LogTangentDescriptor& d) {
    LogTangentBundle out;
    switch (d.ambient) {
        case Ambient::P1Points:
            if (d.m < 0) break;
            out.summands.push_back({2 - d.m});
            return out;
        case Ambient::PnHyperplanes:
            if (d.n < 1 || d.m < 1 || d.m > d.n + 1) break;
            if (d.m == d.n + 1) {
                out.summands.assign(static_cast<std::size_t>(d.n), {0});
                return out;
            }
            out.summands.assign(static_cast<std::size_t>(d.m - 1), {0});
            for (int i = 0; i < d.n - d.m + 1; ++i) out.summands.push_back({1});
            return out;
        case Ambient::QuadricLines:
            if (d.a < 0 || d.b < 0) break;
            out.summands = {{2 - d.a, 0}, {0, 2 - d.b}};
            return out;
        case Ambient::QuadricTMinusD:
            out.summands = {{1, 0}, {-1, 2}};
            return out;
        case Ambient::P1Meromorphic: {
            if (d.pole_orders.empty()) break;
            for (int k : d.pole_orders)
                if (k < 0) throw Error("pole orders must be non-negative");
            out.summands.push_back({2 + std::accumulate(d.pole_orders.begin(), d.pole_orders.end(), 0)});
            return out;
        }
    }
    throw Error("not cataloged");
}

}  // namespace cohiggs
