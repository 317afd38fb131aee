#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "latcode/bounds.hpp"

namespace latcode {

// One row of the beta^(2/k)-versus-mother-density plot data: bound curves for
// optimal and cubic child lattices, the trace-bound line, and the evaluated
// constructions, for (n,k) in {(4,2),(4,3)}.
struct FigureRow {
    std::string series; // det_bound_optimal_children | det_bound_cubic_children |
                        // trace_bound | construction
    int n;
    int k;
    std::string label;     // construction name for construction rows, else empty
    double mother_density; // x
    double beta_2k;        // y
};

inline std::vector<FigureRow> figure3_rows(int grid_points = 81) {
    const double pi = 3.14159265358979323846;
    std::vector<FigureRow> rows;

    for (int k : {2, 3}) {
        const int n = 4;
        const double opt = optimal_density(k);
        const double cub = cubic_density(k);
        const double x_lo = 0.25;
        for (int s = 0; s < grid_points; ++s) {
            const double x = x_lo + (opt - x_lo) * s / (grid_points - 1);
            const double y_opt =
                std::pow(determinant_bound(x, opt, n, k), 2.0 / k);
            const double y_cub =
                std::pow(determinant_bound(x, cub, n, k), 2.0 / k);
            rows.push_back({"det_bound_optimal_children", n, k, "", x, y_opt});
            rows.push_back({"det_bound_cubic_children", n, k, "", x, y_cub});
            rows.push_back({"trace_bound", n, k, "", x, trace_bound(n, k)});
        }
    }

    const double d = 9.0 / 4.0 - 1.0 / std::sqrt(2.0);
    rows.push_back({"construction", 4, 2, "4-2-z2", pi / 4.0, 1.0 / 3.0});
    rows.push_back({"construction", 4, 3, "4-3-cubic", pi / 6.0, 0.75});
    rows.push_back({"construction", 4, 3, "4-3-fcc", pi / std::sqrt(18.0), 0.5});
    rows.push_back({"construction", 4, 3, "4-3-bcc", pi * std::sqrt(3.0) / 8.0, d / 3.0});
    return rows;
}

inline void write_figure3_csv(std::ostream& os, int grid_points = 81) {
    os << "series,n,k,label,mother_density,beta_2k\n";
    char buf[64];
    const auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    for (const auto& r : figure3_rows(grid_points))
        os << r.series << "," << r.n << "," << r.k << "," << r.label << ","
           << num(r.mother_density) << "," << num(r.beta_2k) << "\n";
}

} // namespace latcode
