#include <array>
#include <cstdint>
#include <unordered_map>

#include "fuzzavail/availability.hpp"
#include "fuzzavail/error.hpp"

namespace fuzzavail {

namespace {

// Grid edges are keyed by their lower-index endpoint and direction, so the
// crossing on an edge shared by two cells is computed once, identically.
struct EdgeKey {
    bool along_kd;  // (i,j)-(i+1,j) when true, (i,j)-(i,j+1) otherwise
    std::size_t i;
    std::size_t j;

    std::uint64_t packed() const { return (std::uint64_t(i) << 33) | (std::uint64_t(j) << 1) | (along_kd ? 1u : 0u); }
};

class CellTracer {
public:
    CellTracer(const Grid& grid, double level) : grid_(grid), level_(level) {}

    std::vector<Polyline> trace() {
        for (std::size_t i = 0; i + 1 < grid_.rows(); ++i) {
            for (std::size_t j = 0; j + 1 < grid_.cols(); ++j) march(i, j);
        }
        return join();
    }

private:
    bool inside(std::size_t i, std::size_t j) const { return grid_.at(i, j) >= level_; }

    Point crossing(const EdgeKey& e) const {
        const std::size_t i2 = e.along_kd ? e.i + 1 : e.i;
        const std::size_t j2 = e.along_kd ? e.j : e.j + 1;
        const double a = grid_.at(e.i, e.j);
        const double b = grid_.at(i2, j2);
        const double t = (level_ - a) / (b - a);
        const double kd0 = grid_.kd_samples[e.i];
        const double ks0 = grid_.ks_samples[e.j];
        return {kd0 + t * (grid_.kd_samples[i2] - kd0), ks0 + t * (grid_.ks_samples[j2] - ks0)};
    }

    void march(std::size_t i, std::size_t j) {
        // Corners counter-clockwise from (i,j); edge k joins corner k and k+1.
        const std::array<bool, 4> in{inside(i, j), inside(i + 1, j), inside(i + 1, j + 1), inside(i, j + 1)};
        const std::array<EdgeKey, 4> edges{EdgeKey{true, i, j}, EdgeKey{false, i + 1, j}, EdgeKey{true, i, j + 1},
                                           EdgeKey{false, i, j}};
        int crossings = 0;
        for (int k = 0; k < 4; ++k) crossings += in[k] != in[(k + 1) % 4];
        if (crossings == 0) return;

        if (crossings == 2) {
            std::array<EdgeKey, 2> ends{};
            int n = 0;
            for (int k = 0; k < 4; ++k) {
                if (in[k] != in[(k + 1) % 4]) ends[n++] = edges[k];
            }
            add_segment(ends[0], ends[1]);
            return;
        }

        // Saddle: cut off the corners that disagree with the cell centre.
        const double centre = (grid_.at(i, j) + grid_.at(i + 1, j) + grid_.at(i + 1, j + 1) + grid_.at(i, j + 1)) / 4.0;
        const bool centre_in = centre >= level_;
        for (int k = 0; k < 4; ++k) {
            if (in[k] != centre_in) add_segment(edges[(k + 3) % 4], edges[k]);
        }
    }

    void add_segment(const EdgeKey& a, const EdgeKey& b) {
        const std::size_t ia = node(a);
        const std::size_t ib = node(b);
        const std::size_t id = segments_.size();
        segments_.push_back({ia, ib});
        links_[ia].push_back(id);
        links_[ib].push_back(id);
    }

    std::size_t node(const EdgeKey& e) {
        auto [it, fresh] = node_index_.try_emplace(e.packed(), points_.size());
        if (fresh) {
            points_.push_back(crossing(e));
            links_.emplace_back();
        }
        return it->second;
    }

    std::vector<Polyline> join() {
        std::vector<bool> used(segments_.size(), false);
        std::vector<Polyline> out;

        auto walk = [&](std::size_t start, std::size_t first_seg) {
            Polyline line;
            line.vertices.push_back(points_[start]);
            std::size_t at = start;
            std::size_t seg = first_seg;
            while (true) {
                used[seg] = true;
                const auto [a, b] = segments_[seg];
                at = a == at ? b : a;
                push_distinct(line, points_[at]);
                std::size_t next = segments_.size();
                for (std::size_t s : links_[at]) {
                    if (!used[s]) {
                        next = s;
                        break;
                    }
                }
                if (next == segments_.size()) break;
                seg = next;
            }
            line.closed = at == start && line.vertices.size() > 2;
            if (line.closed && line.vertices.size() > 1 && line.vertices.back() == line.vertices.front()) {
                line.vertices.pop_back();
            }
            out.push_back(std::move(line));
        };

        // Open chains start at nodes on the grid boundary (one incident segment).
        for (std::size_t n = 0; n < points_.size(); ++n) {
            if (links_[n].size() == 1 && !used[links_[n][0]]) walk(n, links_[n][0]);
        }
        for (std::size_t s = 0; s < segments_.size(); ++s) {
            if (!used[s]) walk(segments_[s].first, s);
        }
        return out;
    }

    static void push_distinct(Polyline& line, const Point& p) {
        if (line.vertices.empty() || !(line.vertices.back() == p)) line.vertices.push_back(p);
    }

    const Grid& grid_;
    double level_;
    std::vector<Point> points_;
    std::vector<std::vector<std::size_t>> links_;
    std::vector<std::pair<std::size_t, std::size_t>> segments_;
    std::unordered_map<std::uint64_t, std::size_t> node_index_;
};

}  // namespace

std::vector<ContourSet> contours(const Grid& grid, const std::vector<double>& levels) {
    if (grid.rows() == 0 || grid.cols() == 0 || grid.values.empty()) throw Error("empty-grid", "grid has no samples");
    if (grid.values.size() != grid.rows() * grid.cols()) {
        throw Error("invalid-grid", "grid value count does not match its dimensions");
    }
    std::vector<ContourSet> out;
    out.reserve(levels.size());
    for (double level : levels) out.push_back({level, CellTracer(grid, level).trace()});
    return out;
}

}  // namespace fuzzavail
