#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <optional>

#include "matgeo/matrix.hpp"

namespace matgeo {

// Cached rank-1 matrices per ambient space; these drive neighbourhoods, balls
// and BFS, so they are enumerated once.  Fields are interned, so the pointer
// is a stable key.
inline const std::vector<Mat>& rank_one_list(const Space& s) {
    static std::mutex mu;
    static std::map<std::tuple<const Field*, int, int>, std::vector<Mat>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(s.field, s.m, s.n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, enumerate_rank(*s.field, s.m, s.n, 1)).first;
    return it->second;
}

enum class SetKind { RowType, ColType };

// A maximal adjacent set (maximal clique) of the matrix graph in canonical
// form.  RowType: { c x + A0 : x any 1xn row }, c a nonzero column direction.
// ColType: { y r + A0 : y any mx1 column }, r a nonzero row direction.
// The direction is projectively normalized (first nonzero coordinate 1) and
// the offset's pivot row (RowType) or pivot column (ColType) is zeroed, so
// structural equality decides set equality.
struct MaximalSet {
    SetKind kind;
    std::vector<Elt> direction;  // length m (RowType) or n (ColType)
    Mat offset;

    const Field& field() const { return offset.field(); }
    int rows() const { return offset.rows(); }
    int cols() const { return offset.cols(); }
    Space space() const { return Space(offset.field(), offset.rows(), offset.cols()); }

    int pivot() const {
        for (std::size_t i = 0; i < direction.size(); ++i)
            if (direction[i]) return static_cast<int>(i);
        throw error("maximal set direction is zero");
    }

    std::uint64_t cardinality() const {
        return ipow(field().q(), static_cast<unsigned>(kind == SetKind::RowType ? cols() : rows()));
    }

    bool operator==(const MaximalSet& o) const {
        return kind == o.kind && direction == o.direction && offset == o.offset;
    }
    bool operator!=(const MaximalSet& o) const { return !(*this == o); }
    bool operator<(const MaximalSet& o) const {
        if (kind != o.kind) return kind == SetKind::RowType;
        if (direction != o.direction) return direction < o.direction;
        return space().encode(offset) < space().encode(o.offset);
    }

    // The point with parameter vector v (a row for RowType, a column for ColType).
    Mat at(const std::vector<Elt>& v) const {
        const Field& f = field();
        Mat x(offset);
        if (kind == SetKind::RowType) {
            for (int i = 0; i < rows(); ++i) {
                if (!direction[i]) continue;
                for (int j = 0; j < cols(); ++j) x(i, j) = f.add(x(i, j), f.mul(direction[i], v[j]));
            }
        } else {
            for (int j = 0; j < cols(); ++j) {
                if (!direction[j]) continue;
                for (int i = 0; i < rows(); ++i) x(i, j) = f.add(x(i, j), f.mul(v[i], direction[j]));
            }
        }
        return x;
    }

    std::vector<Mat> points() const {
        const Field& f = field();
        unsigned len = kind == SetKind::RowType ? cols() : rows();
        std::vector<Mat> out;
        out.reserve(cardinality());
        std::vector<Elt> v(len, 0);
        for (std::uint64_t t = 0; t < cardinality(); ++t) {
            std::uint64_t w = t;
            for (unsigned i = 0; i < len; ++i) {
                v[i] = static_cast<Elt>(w % f.q());
                w /= f.q();
            }
            out.push_back(at(v));
        }
        return out;
    }
};

inline std::vector<Elt> normalize_direction(const Field& f, std::vector<Elt> d) {
    int piv = -1;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i]) { piv = static_cast<int>(i); break; }
    if (piv < 0) throw error("direction must be nonzero");
    Elt s = f.inv(d[piv]);
    for (Elt& v : d) v = f.mul(s, v);
    return d;
}

// The canonical row-type set with direction c through the point X.
inline MaximalSet row_set_through(const Mat& x, std::vector<Elt> c) {
    const Field& f = x.field();
    c = normalize_direction(f, std::move(c));
    int piv = 0;
    while (!c[piv]) ++piv;
    Mat a0(x);
    for (int i = 0; i < x.rows(); ++i) {
        if (!c[i]) continue;
        for (int j = 0; j < x.cols(); ++j) a0(i, j) = f.sub(a0(i, j), f.mul(c[i], x(piv, j)));
    }
    return MaximalSet{SetKind::RowType, std::move(c), std::move(a0)};
}

inline MaximalSet col_set_through(const Mat& x, std::vector<Elt> r) {
    const Field& f = x.field();
    r = normalize_direction(f, std::move(r));
    int piv = 0;
    while (!r[piv]) ++piv;
    Mat a0(x);
    for (int j = 0; j < x.cols(); ++j) {
        if (!r[j]) continue;
        for (int i = 0; i < x.rows(); ++i) a0(i, j) = f.sub(a0(i, j), f.mul(x(i, piv), r[j]));
    }
    return MaximalSet{SetKind::ColType, std::move(r), std::move(a0)};
}

// The set shifted by delta: same direction, translated offset.
inline MaximalSet translated(const MaximalSet& m, const Mat& delta) {
    return m.kind == SetKind::RowType ? row_set_through(m.offset + delta, m.direction)
                                      : col_set_through(m.offset + delta, m.direction);
}

inline bool contains(const MaximalSet& m, const Mat& x) {
    if (x.rows() != m.rows() || x.cols() != m.cols() || x.field() != m.field()) return false;
    const Field& f = m.field();
    Mat z = x - m.offset;
    int piv = m.pivot();
    if (m.kind == SetKind::RowType) {
        // z must equal direction * (pivot row of z)
        for (int i = 0; i < z.rows(); ++i)
            for (int j = 0; j < z.cols(); ++j)
                if (z(i, j) != f.mul(m.direction[i], z(piv, j))) return false;
    } else {
        for (int j = 0; j < z.cols(); ++j)
            for (int i = 0; i < z.rows(); ++i)
                if (z(i, j) != f.mul(z(i, piv), m.direction[j])) return false;
    }
    return true;
}

// All projectively normalized nonzero vectors of the given length, in
// encoding order; (q^len - 1)/(q - 1) of them.
inline std::vector<std::vector<Elt>> projective_directions(const Field& f, int len) {
    std::vector<std::vector<Elt>> out;
    std::uint64_t total = ipow(f.q(), static_cast<unsigned>(len));
    for (std::uint64_t e = 1; e < total; ++e) {
        std::vector<Elt> v(len);
        std::uint64_t w = e;
        for (int i = 0; i < len; ++i) {
            v[i] = static_cast<Elt>(w % f.q());
            w /= f.q();
        }
        int piv = 0;
        while (!v[piv]) ++piv;
        if (v[piv] == 1) out.push_back(std::move(v));
    }
    return out;
}

// All maximal sets containing X: row types first, then column types, each in
// direction-encoding order.
inline std::vector<MaximalSet> maximal_sets_through(const Mat& x) {
    std::vector<MaximalSet> out;
    for (auto& c : projective_directions(x.field(), x.rows())) out.push_back(row_set_through(x, c));
    for (auto& r : projective_directions(x.field(), x.cols())) out.push_back(col_set_through(x, r));
    return out;
}

// The exactly two maximal sets containing an adjacent pair; row type first.
inline std::pair<MaximalSet, MaximalSet> maximal_sets_containing_pair(const Mat& a, const Mat& b) {
    a.check_same_space(b);
    Mat r = b - a;
    if (rank(r) != 1) throw not_adjacent();
    auto [u, w] = factor_rank_one(r);
    return {row_set_through(a, u), col_set_through(a, w)};
}

// Intersection as explicit points, sorted by encoding.  Distinct same-type
// sets meet in at most one point; different types in zero or exactly q points.
inline std::vector<Mat> intersect(const MaximalSet& m, const MaximalSet& n) {
    Space s = m.space();
    std::vector<std::pair<Enc, Mat>> hits;
    for (const Mat& x : m.points())
        if (contains(n, x)) hits.emplace_back(s.encode(x), x);
    std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Mat> out;
    for (auto& h : hits) out.push_back(std::move(h.second));
    return out;
}

// A line of the affine geometry on a maximal set: q points, materialized and
// sorted by encoding.
struct Line {
    MaximalSet carrier;
    std::vector<Mat> points;

    bool contains_point(const Mat& x) const {
        return std::find(points.begin(), points.end(), x) != points.end();
    }
};

inline Line line_through(const MaximalSet& m, const Mat& x, const Mat& y) {
    if (x == y) throw error("a line needs two distinct points");
    if (!contains(m, x) || !contains(m, y)) throw error("line endpoints must lie in the carrier set");
    const Field& f = m.field();
    Mat d = y - x;
    Space s = m.space();
    std::vector<std::pair<Enc, Mat>> pts;
    for (unsigned c = 0; c < f.q(); ++c) {
        Mat pt = d.scaled(static_cast<Elt>(c)) + x;
        pts.emplace_back(s.encode(pt), std::move(pt));
    }
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Mat> out;
    for (auto& p : pts) out.push_back(std::move(p.second));
    return Line{m, std::move(out)};
}

// Membership decided from adjacency with three noncollinear witnesses in the
// set.  X equal to a witness is a member by definition; otherwise adjacency
// with all three decides.  Cross-checked against the direct containment test.
inline bool membership_by_three_points(const Mat& x, const Mat& p1, const Mat& p2, const Mat& p3,
                                       const MaximalSet& m) {
    if (p1 == p2 || p1 == p3 || p2 == p3) throw invalid_witness("witness points must be distinct");
    if (!contains(m, p1) || !contains(m, p2) || !contains(m, p3))
        throw invalid_witness("witness points must lie in the maximal set");
    if (line_through(m, p1, p2).contains_point(p3)) throw invalid_witness("witness points are collinear");
    bool claimed = (x == p1 || x == p2 || x == p3) ||
                   (is_adjacent(x, p1) && is_adjacent(x, p2) && is_adjacent(x, p3));
    if (claimed != contains(m, x)) throw error("three-point membership disagrees with containment");
    return claimed;
}

// Dimension of an adjacent set containing 0: the rank of the stacked
// parameter vectors inside its containing maximal set through 0.
inline int adjacent_set_dim(const std::vector<Mat>& s) {
    if (s.size() < 2) throw error("adjacent set dimension needs at least two points");
    bool has_zero = false;
    for (const auto& x : s) has_zero |= x.is_zero();
    if (!has_zero) throw error("adjacent set must contain 0");
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s[i] != s[j] && !is_adjacent(s[i], s[j])) throw error("not an adjacent set");
    const Mat* first_nonzero = nullptr;
    for (const auto& x : s)
        if (!x.is_zero()) { first_nonzero = &x; break; }
    if (!first_nonzero) throw error("adjacent set has a single distinct point");
    Mat zero(s[0].field(), s[0].rows(), s[0].cols());
    auto [rowm, colm] = maximal_sets_containing_pair(zero, *first_nonzero);
    const MaximalSet* carrier = nullptr;
    for (const MaximalSet* cand : {&rowm, &colm}) {
        bool all = true;
        for (const auto& x : s) all = all && contains(*cand, x);
        if (all) { carrier = cand; break; }
    }
    if (!carrier) throw error("set is not contained in one maximal set");
    const Field& f = s[0].field();
    int piv = carrier->pivot();
    int len = carrier->kind == SetKind::RowType ? s[0].cols() : s[0].rows();
    Mat stacked(f, static_cast<int>(s.size()), len);
    for (std::size_t t = 0; t < s.size(); ++t)
        for (int j = 0; j < len; ++j)
            stacked(static_cast<int>(t), j) =
                carrier->kind == SetKind::RowType ? s[t](piv, j) : s[t](j, piv);
    return rank(stacked);
}

// Unit ball and neighbourhood, materialized and sorted by encoding.
inline std::vector<Mat> ball(const Mat& a) {
    Space s(a.field(), a.rows(), a.cols());
    std::vector<std::pair<Enc, Mat>> pts;
    pts.emplace_back(s.encode(a), a);
    for (const Mat& r : rank_one_list(s)) {
        Mat x = a + r;
        pts.emplace_back(s.encode(x), std::move(x));
    }
    std::sort(pts.begin(), pts.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
    std::vector<Mat> out;
    for (auto& p : pts) out.push_back(std::move(p.second));
    return out;
}

inline std::vector<Mat> neighborhood(const Mat& a) {
    auto b = ball(a);
    std::vector<Mat> out;
    for (auto& x : b)
        if (x != a) out.push_back(std::move(x));
    return out;
}

// Shortest-path distance in the matrix graph, the independent oracle for the
// rank metric.
inline int bfs_distance(const Mat& a, const Mat& b) {
    a.check_same_space(b);
    Space s(a.field(), a.rows(), a.cols());
    require_cap(s.count(), "graph breadth-first search");
    if (a == b) return 0;
    std::vector<Enc> rank1;
    for (const Mat& r : rank_one_list(s)) rank1.push_back(s.encode(r));
    std::vector<int> dist(s.count(), -1);
    std::deque<Enc> queue;
    Enc start = s.encode(a), goal = s.encode(b);
    dist[start] = 0;
    queue.push_back(start);
    while (!queue.empty()) {
        Enc cur = queue.front();
        queue.pop_front();
        Mat x = s.decode(cur);
        for (Enc re : rank1) {
            Enc nxt = s.encode(x + s.decode(re));
            if (dist[nxt] < 0) {
                dist[nxt] = dist[cur] + 1;
                if (nxt == goal) return dist[nxt];
                queue.push_back(nxt);
            }
        }
    }
    throw error("graph is disconnected");  // cannot happen for these graphs
}

// Deterministic DOT or edge-list export; vertices are labeled by encoding,
// an edge appears once with the smaller encoding first.
inline std::string graph_export(const Field& f, int m, int n, const std::string& format) {
    Space s(f, m, n);
    require_cap(s.count(), "graph export");
    std::ostringstream os;
    const auto& rank1 = rank_one_list(s);
    if (format == "dot") {
        os << "graph matrixgraph {\n";
        for (Enc e = 0; e < s.count(); ++e)
            os << "  v" << e << " [label=\"" << s.decode(e).text() << "\"];\n";
    } else if (format != "edges") {
        throw error("unknown export format: " + format);
    }
    for (Enc e = 0; e < s.count(); ++e) {
        Mat x = s.decode(e);
        for (const Mat& r : rank1) {
            Enc other = s.encode(x + r);
            if (other <= e) continue;
            if (format == "dot")
                os << "  v" << e << " -- v" << other << ";\n";
            else
                os << e << " " << other << "\n";
        }
    }
    if (format == "dot") os << "}\n";
    return os.str();
}

}  // namespace matgeo
