#include <limits>

#include "gcrp/graphkit.hpp"

namespace gcrp {

// Shortest augmenting path form of the Hungarian method with row/column
// potentials, O(n^3).
Assignment solve_assignment(const std::vector<std::vector<Cost>>& cost) {
    const std::size_t n = cost.size();
    for (const auto& row : cost)
        if (row.size() != n) throw InvalidArgument("solve_assignment: cost matrix is not square");
    Assignment result;
    if (n == 0) return result;

    constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;
    // 1-based; column 0 is the virtual start.
    std::vector<Cost> row_pot(n + 1, 0), col_pot(n + 1, 0);
    std::vector<std::size_t> row_of_col(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        row_of_col[0] = i;
        std::size_t j0 = 0;
        std::vector<Cost> min_slack(n + 1, kInf);
        std::vector<bool> visited(n + 1, false);
        do {
            visited[j0] = true;
            const std::size_t i0 = row_of_col[j0];
            Cost delta = kInf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (visited[j]) continue;
                Cost reduced = cost[i0 - 1][j - 1] - row_pot[i0] - col_pot[j];
                if (reduced < min_slack[j]) {
                    min_slack[j] = reduced;
                    way[j] = j0;
                }
                if (min_slack[j] < delta) {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (visited[j]) {
                    row_pot[row_of_col[j]] += delta;
                    col_pot[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
        } while (row_of_col[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            row_of_col[j0] = row_of_col[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    result.column_of_row.assign(n, -1);
    for (std::size_t j = 1; j <= n; ++j) result.column_of_row[row_of_col[j] - 1] = static_cast<int>(j - 1);
    for (std::size_t i = 0; i < n; ++i) result.cost += cost[i][static_cast<std::size_t>(result.column_of_row[i])];
    return result;
}

}  // namespace gcrp
