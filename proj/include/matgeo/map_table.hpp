#pragma once

#include <istream>
#include <ostream>

#include "matgeo/geometry.hpp"

namespace matgeo {

// An explicit total map D^{m x n} -> D'^{m' x n'}, the object the classifier
// and searcher work on.  Dense, indexed by source encoding.
struct MapTable {
    Space src;
    Space dst;
    std::vector<Enc> out;  // out[src encoding] = dst encoding

    MapTable() = default;
    MapTable(Space s, Space d) : src(s), dst(d), out(s.count(), 0) {}

    Enc apply_enc(Enc e) const { return out[e]; }
    Mat apply(const Mat& x) const { return dst.decode(out[src.encode(x)]); }

    bool operator==(const MapTable& o) const { return src == o.src && dst == o.dst && out == o.out; }
    bool operator!=(const MapTable& o) const { return !(*this == o); }

    void write(std::ostream& os) const {
        os << "maptable v1\n";
        os << "src field " << src.field->spec_string() << "\n";
        os << "src shape " << src.m << " " << src.n << "\n";
        os << "dst field " << dst.field->spec_string() << "\n";
        os << "dst shape " << dst.m << " " << dst.n << "\n";
        for (Enc e = 0; e < src.count(); ++e)
            os << src.decode(e).text() << " => " << dst.decode(out[e]).text() << "\n";
    }

    static MapTable read(std::istream& is) {
        std::string line;
        if (!std::getline(is, line) || line != "maptable v1") throw parse_error("expected 'maptable v1' header");
        Space src = read_space(is, "src");
        Space dst = read_space(is, "dst");
        MapTable t(src, dst);
        std::vector<bool> seen(src.count(), false);
        std::uint64_t rows = 0;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            auto sep = line.find(" => ");
            if (sep == std::string::npos) throw parse_error("malformed map line: " + line);
            Mat a = src.parse(line.substr(0, sep));
            Mat b = dst.parse(line.substr(sep + 4));
            Enc ae = src.encode(a);
            if (seen[ae]) throw parse_error("duplicate source entry: " + a.text());
            seen[ae] = true;
            t.out[ae] = dst.encode(b);
            ++rows;
        }
        if (rows != src.count())
            throw parse_error("table has " + std::to_string(rows) + " entries, expected " +
                              std::to_string(src.count()));
        return t;
    }

    // First adjacent source pair with non-adjacent images, in encoding order;
    // nullopt means the table is a graph homomorphism.  Each edge is visited
    // once via rank-1 perturbations with increasing encodings.
    std::optional<std::pair<Enc, Enc>> hom_violation() const {
        const auto& rank1 = rank_one_list(src);
        for (Enc e = 0; e < src.count(); ++e) {
            Mat x = src.decode(e);
            Mat fx = dst.decode(out[e]);
            for (const Mat& r : rank1) {
                Enc oe = src.encode(x + r);
                if (oe <= e) continue;
                if (rank(dst.decode(out[oe]) - fx) != 1) return std::make_pair(e, oe);
            }
        }
        return std::nullopt;
    }

private:
    static Space read_space(std::istream& is, const std::string& tag) {
        std::string line;
        if (!std::getline(is, line) || line.rfind(tag + " field ", 0) != 0)
            throw parse_error("expected '" + tag + " field ...'");
        const Field& f = parse_field_spec(line.substr(tag.size() + 7));
        if (!std::getline(is, line) || line.rfind(tag + " shape ", 0) != 0)
            throw parse_error("expected '" + tag + " shape ...'");
        std::istringstream ss(line.substr(tag.size() + 7));
        int m = 0, n = 0;
        ss >> m >> n;
        if (m < 1 || n < 1) throw parse_error("bad shape in " + tag);
        return Space(f, m, n);
    }
};

}  // namespace matgeo
