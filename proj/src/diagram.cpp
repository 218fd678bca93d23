#include "legdga/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace legdga {

namespace {

// Resolution conventions. At a resolved front crossing the strand of lesser
// slope (the descending one) passes over; the loop replacing a right cusp
// crosses with the strand that enters the loop on top.
constexpr bool kFrontCrossingDescendingOver = true;
constexpr bool kRightCuspDescendingOver = true;

struct Token {
    std::string text;
    int line = 0;
    int col = 0;
};

std::vector<std::vector<Token>> tokenize_lines(const std::string& text) {
    std::vector<std::vector<Token>> lines;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::vector<Token> toks;
        std::size_t i = 0;
        while (i < raw.size()) {
            char c = raw[i];
            if (c == '#') break;
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            if (c == '(' || c == ')' || c == ':') {
                toks.push_back({std::string(1, c), lineno, static_cast<int>(i) + 1});
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j])) && raw[j] != '(' &&
                   raw[j] != ')' && raw[j] != ':' && raw[j] != '#')
                ++j;
            toks.push_back({raw.substr(i, j - i), lineno, static_cast<int>(i) + 1});
            i = j;
        }
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    return lines;
}

int to_int(const Token& t) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(t.text, &pos);
        if (pos != t.text.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ParseError("expected an integer, got '" + t.text + "'", t.line, t.col);
    }
}

} // namespace

std::optional<std::size_t> LagrangianDiagram::find_crossing(const std::string& id) const {
    for (std::size_t v = 0; v < crossing_ids_.size(); ++v)
        if (crossing_ids_[v] == id) return v;
    return std::nullopt;
}

LagrangianDiagram LagrangianDiagram::build(BuildInput in) {
    LagrangianDiagram d;
    d.crossing_ids_ = in.crossing_ids;
    d.edge_ids_ = in.edge_ids;
    d.basepoint_edge_ = in.basepoint_edge;
    d.orient_edge_ = in.orient_edge;
    d.orient_end0_to_end1_ = in.orient_end0_to_end1;
    d.outer_ref_ = in.outer_ref;
    d.outer_edge_ = in.outer_edge;

    std::size_t nv = in.crossing_ids.size();
    std::size_t ne = in.edge_ids.size();
    if (in.slots.size() != nv) throw Error(Error::Kind::validation, "slot table size mismatch");
    if (ne * 2 != nv * 4)
        throw Error(Error::Kind::validation, "diagram is not 4-valent: need exactly 2 ends per edge");

    d.dart_edge_.assign(4 * nv, -1);
    d.dart_end_.assign(4 * nv, -1);
    d.edge_dart_[0].assign(ne, -1);
    d.edge_dart_[1].assign(ne, -1);
    for (std::size_t v = 0; v < nv; ++v) {
        for (int s = 0; s < 4; ++s) {
            auto [e, end] = in.slots[v][s];
            if (e < 0 || static_cast<std::size_t>(e) >= ne)
                throw Error(Error::Kind::validation, "slot references unknown edge");
            if (end != 0 && end != 1) throw Error(Error::Kind::validation, "bad edge end");
            std::size_t dd = d.dart(v, s);
            d.dart_edge_[dd] = e;
            d.dart_end_[dd] = end;
            if (d.edge_dart_[end][static_cast<std::size_t>(e)] != -1)
                throw Error(Error::Kind::validation,
                            "edge " + in.edge_ids[static_cast<std::size_t>(e)] + " has more than two ends");
            d.edge_dart_[end][static_cast<std::size_t>(e)] = static_cast<int>(dd);
        }
    }
    for (std::size_t e = 0; e < ne; ++e)
        if (d.edge_dart_[0][e] == -1 || d.edge_dart_[1][e] == -1)
            throw Error(Error::Kind::validation, "edge " + in.edge_ids[e] + " is dangling");
    d.dart_mate_.assign(4 * nv, -1);
    for (std::size_t e = 0; e < ne; ++e) {
        d.dart_mate_[static_cast<std::size_t>(d.edge_dart_[0][e])] = d.edge_dart_[1][e];
        d.dart_mate_[static_cast<std::size_t>(d.edge_dart_[1][e])] = d.edge_dart_[0][e];
    }

    d.orient();
    d.trace_faces();

    // Resolve the outer-face witness to a face index.
    if (in.outer_edge < 0 || static_cast<std::size_t>(in.outer_edge) >= ne)
        throw Error(Error::Kind::validation, "missing outer face declaration");
    int e = in.outer_edge;
    int src_dart;
    switch (in.outer_ref) {
    case BuildInput::OuterRef::knot_left:
        src_dart = d.edge_forward_[static_cast<std::size_t>(e)] ? d.edge_dart_[0][static_cast<std::size_t>(e)]
                                                                : d.edge_dart_[1][static_cast<std::size_t>(e)];
        break;
    case BuildInput::OuterRef::knot_right:
        src_dart = d.edge_forward_[static_cast<std::size_t>(e)] ? d.edge_dart_[1][static_cast<std::size_t>(e)]
                                                                : d.edge_dart_[0][static_cast<std::size_t>(e)];
        break;
    case BuildInput::OuterRef::from_end0_left:
        src_dart = d.edge_dart_[0][static_cast<std::size_t>(e)];
        break;
    default:
        src_dart = d.edge_dart_[1][static_cast<std::size_t>(e)];
        break;
    }
    d.outer_face_ = d.face_of_dart_[static_cast<std::size_t>(src_dart)];
    // Normalize the stored witness so re-orientation keeps the same face.
    d.outer_ref_ = d.dart_end_[static_cast<std::size_t>(src_dart)] == 0 ? BuildInput::OuterRef::from_end0_left
                                                                        : BuildInput::OuterRef::from_end1_left;

    d.validate();
    return d;
}

void LagrangianDiagram::orient() {
    std::size_t ne = edge_ids_.size();
    if (basepoint_edge_ < 0 || static_cast<std::size_t>(basepoint_edge_) >= ne)
        throw Error(Error::Kind::validation, "missing basepoint");
    if (orient_edge_ < 0 || static_cast<std::size_t>(orient_edge_) >= ne)
        throw Error(Error::Kind::validation, "missing orientation");

    edge_forward_.assign(ne, true);
    std::vector<bool> seen(ne, false);

    int e = orient_edge_;
    bool fwd = orient_end0_to_end1_;
    std::size_t count = 0;
    while (true) {
        if (seen[static_cast<std::size_t>(e)]) break;
        seen[static_cast<std::size_t>(e)] = true;
        edge_forward_[static_cast<std::size_t>(e)] = fwd;
        ++count;
        // arrive at the crossing holding the edge's head, pass straight through
        int head = fwd ? edge_dart_[1][static_cast<std::size_t>(e)] : edge_dart_[0][static_cast<std::size_t>(e)];
        std::size_t v = static_cast<std::size_t>(head) / 4;
        int s = head % 4;
        std::size_t out = dart(v, (s + 2) % 4);
        e = dart_edge_[out];
        fwd = dart_end_[out] == 0;
    }
    if (count != ne)
        throw Error(Error::Kind::validation, "diagram is not a single knot component");
}

void LagrangianDiagram::trace_faces() {
    std::size_t nd = dart_edge_.size();
    face_of_dart_.assign(nd, -1);
    face_sizes_.clear();
    for (std::size_t start = 0; start < nd; ++start) {
        if (face_of_dart_[start] != -1) continue;
        int f = static_cast<int>(face_sizes_.size());
        int size = 0;
        std::size_t dcur = start;
        do {
            face_of_dart_[dcur] = f;
            ++size;
            int a = dart_mate_[dcur];
            std::size_t v = static_cast<std::size_t>(a) / 4;
            int s = a % 4;
            dcur = dart(v, (s + 3) % 4);
        } while (dcur != start);
        face_sizes_.push_back(size);
    }
}

void LagrangianDiagram::validate() const {
    std::size_t nv = crossing_ids_.size();
    std::size_t ne = edge_ids_.size();
    long euler = static_cast<long>(nv) - static_cast<long>(ne) + static_cast<long>(face_sizes_.size());
    if (euler != 2)
        throw Error(Error::Kind::validation,
                    "rotation system is not planar: V - E + F = " + std::to_string(euler));
    std::map<std::string, int> ids;
    for (const auto& id : crossing_ids_)
        if (++ids[id] > 1) throw Error(Error::Kind::validation, "duplicate crossing id: " + id);
}

bool LagrangianDiagram::knot_leaves_via(std::size_t d) const {
    int e = dart_edge_[d];
    bool fwd = edge_forward_[static_cast<std::size_t>(e)];
    return (dart_end_[d] == 0) == fwd;
}

std::vector<int> LagrangianDiagram::face_windings(const std::vector<int>& net_edge) const {
    std::vector<int> w(face_sizes_.size(), 0);
    std::vector<bool> set(face_sizes_.size(), false);
    w[static_cast<std::size_t>(outer_face_)] = 0;
    set[static_cast<std::size_t>(outer_face_)] = true;
    // cross edges of the dual graph until every face has a winding number
    std::vector<std::size_t> stack = {static_cast<std::size_t>(outer_face_)};
    while (!stack.empty()) {
        std::size_t f = stack.back();
        stack.pop_back();
        for (std::size_t e = 0; e < edge_ids_.size(); ++e) {
            std::size_t left = static_cast<std::size_t>(face_of_dart_[static_cast<std::size_t>(edge_dart_[0][e])]);
            std::size_t right = static_cast<std::size_t>(face_of_dart_[static_cast<std::size_t>(edge_dart_[1][e])]);
            if (left != f && right != f) continue;
            // w[left] - w[right] = net
            std::size_t other = left == f ? right : left;
            int val = left == f ? w[f] - net_edge[e] : w[f] + net_edge[e];
            if (!set[other]) {
                set[other] = true;
                w[other] = val;
                stack.push_back(other);
            } else if (w[other] != val) {
                throw Error(Error::Kind::validation, "inconsistent winding numbers (internal)");
            }
        }
    }
    for (bool s : set)
        if (!s) throw Error(Error::Kind::validation, "disconnected face structure (internal)");
    return w;
}

int LagrangianDiagram::quarter_turning(const std::vector<int>& net_edge) const {
    std::vector<int> w = face_windings(net_edge);
    int t4 = 0;
    for (std::size_t f = 0; f < face_sizes_.size(); ++f) {
        int eps = static_cast<int>(f) == outer_face_ ? -1 : 1;
        t4 += w[f] * (4 * eps - face_sizes_[f]);
    }
    return t4;
}

ClassicalInvariants LagrangianDiagram::classical_invariants() const {
    ClassicalInvariants inv;
    // tb = writhe of the Lagrangian projection
    for (std::size_t v = 0; v < crossing_ids_.size(); ++v) {
        int over_out = knot_leaves_via(dart(v, 1)) ? 1 : 3;
        int under_out = knot_leaves_via(dart(v, 0)) ? 0 : 2;
        inv.tb += ((under_out - over_out + 4) % 4 == 1) ? 1 : -1;
    }
    // r = turning number of the projection
    std::vector<int> net(edge_ids_.size());
    for (std::size_t e = 0; e < edge_ids_.size(); ++e) net[e] = edge_forward_[e] ? 1 : -1;
    int t4 = quarter_turning(net);
    if (t4 % 4 != 0) throw Error(Error::Kind::validation, "non-integral turning number (internal)");
    inv.r = t4 / 4;
    return inv;
}

std::vector<int> LagrangianDiagram::chord_gradings() const {
    ClassicalInvariants inv = classical_invariants();
    if (inv.r != 0)
        throw Error(Error::Kind::grading,
                    "gradings need rotation number 0, got r = " + std::to_string(inv.r));
    std::vector<int> degrees(crossing_ids_.size(), 0);
    for (std::size_t v = 0; v < crossing_ids_.size(); ++v) {
        // Walk from the overcrossing point to the undercrossing point along
        // the knot; of the two arcs, the capping path is the one missing the
        // basepoint.
        auto walk = [&](bool along) -> std::optional<std::pair<std::vector<int>, std::pair<int, int>>> {
            // returns per-edge net traversal counts and the (exit, entry) slots
            std::vector<int> net(edge_ids_.size(), 0);
            int start_slot = -1;
            for (int s : {1, 3})
                if (knot_leaves_via(dart(v, s)) == along) start_slot = s;
            // when walking against the knot we leave via the over-strand's inbound dart
            std::size_t cur = dart(v, start_slot);
            int steps = 0;
            while (true) {
                if (++steps > static_cast<int>(4 * edge_ids_.size()) + 4)
                    throw Error(Error::Kind::validation, "capping path failed to close (internal)");
                int e = dart_edge_[cur];
                if (e == basepoint_edge_) return std::nullopt;
                bool end0_to_end1 = dart_end_[cur] == 0;
                net[static_cast<std::size_t>(e)] += end0_to_end1 ? 1 : -1;
                std::size_t arrive = static_cast<std::size_t>(dart_mate_[cur]);
                std::size_t v2 = arrive / 4;
                int s2 = static_cast<int>(arrive % 4);
                if (v2 == v && (s2 == 0 || s2 == 2))
                    return std::make_pair(net, std::make_pair(start_slot, s2));
                cur = dart(v2, (s2 + 2) % 4);
            }
        };
        auto path = walk(true);
        if (!path) path = walk(false);
        if (!path) throw Error(Error::Kind::validation, "no basepoint-free capping path (internal)");
        int t4 = quarter_turning(path->first);
        if ((t4 % 2 + 2) % 2 != 1)
            throw Error(Error::Kind::grading, "capping path rotation is not an odd quarter (internal)");
        degrees[v] = (t4 - 1) / 2;
    }
    return degrees;
}

std::vector<Disk> LagrangianDiagram::disks() const {
    std::size_t nv = crossing_ids_.size();
    std::vector<int> bounded; // face indices
    for (std::size_t f = 0; f < face_sizes_.size(); ++f)
        if (static_cast<int>(f) != outer_face_) bounded.push_back(static_cast<int>(f));
    if (bounded.size() > 22)
        throw Error(Error::Kind::unsupported, "disk enumeration supports at most 22 bounded faces");
    std::vector<int> face_bit(face_sizes_.size(), -1);
    for (std::size_t i = 0; i < bounded.size(); ++i) face_bit[static_cast<std::size_t>(bounded[i])] = static_cast<int>(i);

    // face adjacency via shared edges, for connectivity of candidate regions
    std::vector<std::pair<int, int>> edge_faces(edge_ids_.size());
    for (std::size_t e = 0; e < edge_ids_.size(); ++e)
        edge_faces[e] = {face_of_dart_[static_cast<std::size_t>(edge_dart_[0][e])],
                         face_of_dart_[static_cast<std::size_t>(edge_dart_[1][e])]};

    std::vector<Disk> out;
    const std::uint32_t limit = 1u << bounded.size();
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
        auto covered = [&](int face) {
            int b = face_bit[static_cast<std::size_t>(face)];
            return b >= 0 && (mask >> b & 1u) != 0;
        };
        // local pattern at each crossing: nothing, one quadrant (corner),
        // two adjacent quadrants (boundary passes straight), or all four
        bool ok = true;
        int positive_count = 0;
        std::size_t positive_vertex = 0;
        int positive_quadrant = -1;
        int corner_total = 0;
        for (std::size_t v = 0; v < nv && ok; ++v) {
            unsigned q = 0;
            for (int s = 0; s < 4; ++s)
                if (covered(face_of_dart_[dart(v, s)])) q |= 1u << s;
            switch (q) {
            case 0b0000:
            case 0b1111:
                break;
            case 0b0011:
            case 0b0110:
            case 0b1100:
            case 0b1001:
                break; // straight passage
            case 0b0001:
            case 0b0010:
            case 0b0100:
            case 0b1000: {
                int quad = q == 1 ? 0 : q == 2 ? 1 : q == 4 ? 2 : 3;
                ++corner_total;
                if (quad == 1 || quad == 3) {
                    ++positive_count;
                    positive_vertex = v;
                    positive_quadrant = quad;
                }
                break;
            }
            default:
                ok = false; // opposite quadrants or a reflex corner
            }
        }
        if (!ok || positive_count != 1) continue;

        // connectivity over shared edges
        int nbits = static_cast<int>(bounded.size());
        std::vector<int> comp(static_cast<std::size_t>(nbits), -1);
        std::vector<int> stack;
        int first = -1;
        for (int b = 0; b < nbits; ++b)
            if (mask >> b & 1u) {
                first = b;
                break;
            }
        comp[static_cast<std::size_t>(first)] = 0;
        stack.push_back(first);
        std::size_t reached = 1;
        while (!stack.empty()) {
            int b = stack.back();
            stack.pop_back();
            int f = bounded[static_cast<std::size_t>(b)];
            for (std::size_t e = 0; e < edge_ids_.size(); ++e) {
                auto [fa, fb] = edge_faces[e];
                int other = -1;
                if (fa == f) other = fb;
                else if (fb == f) other = fa;
                else continue;
                int ob = other >= 0 ? face_bit[static_cast<std::size_t>(other)] : -1;
                if (ob < 0 || !(mask >> ob & 1u) || comp[static_cast<std::size_t>(ob)] == 0) continue;
                comp[static_cast<std::size_t>(ob)] = 0;
                ++reached;
                stack.push_back(ob);
            }
        }
        if (reached != static_cast<std::size_t>(__builtin_popcount(mask))) continue;

        // Euler characteristic of the closed region must be 1
        std::size_t vp = 0, ep = 0;
        for (std::size_t v = 0; v < nv; ++v)
            for (int s = 0; s < 4; ++s)
                if (covered(face_of_dart_[dart(v, s)])) {
                    ++vp;
                    break;
                }
        for (std::size_t e = 0; e < edge_ids_.size(); ++e)
            if (covered(edge_faces[e].first) || covered(edge_faces[e].second)) ++ep;
        long chi = static_cast<long>(vp) - static_cast<long>(ep) + __builtin_popcount(mask);
        if (chi != 1) continue;

        // boundary walk counterclockwise (disk on the left) from the positive corner
        Disk disk;
        disk.positive_corner = positive_vertex;
        std::size_t cur = dart(positive_vertex, positive_quadrant);
        int corners_seen = 1;
        int guard = 0;
        bool good = true;
        while (true) {
            if (++guard > static_cast<int>(8 * edge_ids_.size()) + 8) {
                good = false;
                break;
            }
            int e = dart_edge_[cur];
            if (e == basepoint_edge_) {
                bool end0_to_end1 = dart_end_[cur] == 0;
                bool along = end0_to_end1 == edge_forward_[static_cast<std::size_t>(e)];
                disk.t_power += along ? 1 : -1;
            }
            std::size_t arrive = static_cast<std::size_t>(dart_mate_[cur]);
            std::size_t v2 = arrive / 4;
            int j = static_cast<int>(arrive % 4);
            int q1 = (j + 3) % 4;
            if (!covered(face_of_dart_[dart(v2, q1)]))
                throw Error(Error::Kind::validation, "disk boundary walk inconsistent (internal)");
            int q2 = (j + 2) % 4;
            bool straight = covered(face_of_dart_[dart(v2, q2)]);
            if (straight) {
                cur = dart(v2, q2);
                continue;
            }
            if (v2 == positive_vertex && q1 == positive_quadrant) break; // closed up
            disk.negative_corners.push_back(v2);
            ++corners_seen;
            cur = dart(v2, q1);
        }
        if (!good || corners_seen != corner_total)
            throw Error(Error::Kind::validation, "disk boundary walk did not close (internal)");
        out.push_back(std::move(disk));
    }

    std::sort(out.begin(), out.end(), [&](const Disk& a, const Disk& b) {
        if (a.positive_corner != b.positive_corner) return a.positive_corner < b.positive_corner;
        if (a.negative_corners != b.negative_corners) return a.negative_corners < b.negative_corners;
        return a.t_power < b.t_power;
    });
    return out;
}

LagrangianDiagram LagrangianDiagram::reversed() const {
    BuildInput in = to_build_input();
    in.orient_end0_to_end1 = !in.orient_end0_to_end1;
    return build(std::move(in));
}

LagrangianDiagram LagrangianDiagram::with_basepoint(const std::string& edge_id) const {
    BuildInput in = to_build_input();
    in.basepoint_edge = -1;
    for (std::size_t e = 0; e < edge_ids_.size(); ++e)
        if (edge_ids_[e] == edge_id) in.basepoint_edge = static_cast<int>(e);
    if (in.basepoint_edge < 0) throw Error(Error::Kind::validation, "unknown edge: " + edge_id);
    return build(std::move(in));
}

LagrangianDiagram::BuildInput LagrangianDiagram::to_build_input() const {
    BuildInput in;
    in.crossing_ids = crossing_ids_;
    in.edge_ids = edge_ids_;
    in.slots.resize(crossing_ids_.size());
    for (std::size_t v = 0; v < crossing_ids_.size(); ++v)
        for (int s = 0; s < 4; ++s) {
            std::size_t dd = dart(v, s);
            in.slots[v][static_cast<std::size_t>(s)] = {dart_edge_[dd], dart_end_[dd]};
        }
    in.basepoint_edge = basepoint_edge_;
    in.orient_edge = orient_edge_;
    in.orient_end0_to_end1 = orient_end0_to_end1_;
    in.outer_edge = outer_edge_;
    in.outer_ref = outer_ref_;
    return in;
}

std::string LagrangianDiagram::save_lkd() const {
    std::ostringstream os;
    os << "lagrangian\n";
    for (std::size_t v = 0; v < crossing_ids_.size(); ++v) {
        os << "X " << crossing_ids_[v] << " : (";
        for (int s = 0; s < 4; ++s) {
            if (s) os << " ";
            if (s == 1 || s == 3) os << "^";
            os << edge_ids_[static_cast<std::size_t>(dart_edge_[dart(v, s)])];
        }
        os << ")\n";
    }
    os << "basepoint " << edge_ids_[static_cast<std::size_t>(basepoint_edge_)] << "\n";
    // '+' means the edge runs from its first listed end to its second
    {
        std::size_t e = 0;
        bool fwd = edge_forward_[e];
        int d0 = edge_dart_[0][e];
        int d1 = edge_dart_[1][e];
        bool emitted_order_matches = d0 < d1;
        os << "orient " << edge_ids_[e] << " " << ((fwd == emitted_order_matches) ? "+" : "-") << "\n";
    }
    // pick any edge bordering the outer face
    for (std::size_t e = 0; e < edge_ids_.size(); ++e) {
        int dl = edge_dart_[0][e];
        int dr = edge_dart_[1][e];
        bool left_outer = face_of_dart_[static_cast<std::size_t>(dl)] == outer_face_;
        bool right_outer = face_of_dart_[static_cast<std::size_t>(dr)] == outer_face_;
        if (!left_outer && !right_outer) continue;
        // express relative to the knot direction as the parser expects
        bool fwd = edge_forward_[e];
        bool first_listed_is_end0 = dl < dr;
        // the side named in the file refers to travel from first listed end to second
        bool outer_is_left_of_first_to_second = first_listed_is_end0 ? left_outer : right_outer;
        bool along_knot = (fwd == first_listed_is_end0);
        bool outer_left_of_knot = along_knot == outer_is_left_of_first_to_second;
        os << "outer " << edge_ids_[e] << " " << (outer_left_of_knot ? "left" : "right") << "\n";
        break;
    }
    return os.str();
}

LagrangianDiagram parse_lagrangian(const std::string& text) {
    auto lines = tokenize_lines(text);
    if (lines.empty()) throw ParseError("empty diagram file", 1, 1);
    std::size_t first = 0;
    if (lines[0][0].text == "lagrangian") first = 1;
    LagrangianDiagram::BuildInput in;
    std::map<std::string, int> edge_index;
    std::map<std::string, std::vector<std::pair<int, int>>> occurrences; // edge -> (crossing, slot)
    std::string orient_edge, outer_edge, basepoint;
    bool orient_plus = true;
    bool outer_left = true;
    int orient_line = 0;

    for (std::size_t li = first; li < lines.size(); ++li) {
        const auto& toks = lines[li];
        const Token& head = toks[0];
        if (head.text == "X") {
            if (toks.size() != 9 || toks[2].text != ":" || toks[3].text != "(" || toks[8].text != ")")
                throw ParseError("expected: X <id> : (<e> <e> <e> <e>)", head.line, head.col);
            std::array<std::string, 4> ids;
            std::array<bool, 4> over{};
            for (int s = 0; s < 4; ++s) {
                std::string t = toks[static_cast<std::size_t>(4 + s)].text;
                if (!t.empty() && t[0] == '^') {
                    over[static_cast<std::size_t>(s)] = true;
                    t = t.substr(1);
                }
                if (t.empty()) throw ParseError("empty edge id", head.line, head.col);
                ids[static_cast<std::size_t>(s)] = t;
            }
            int rot;
            if (!over[0] && over[1] && !over[2] && over[3]) rot = 0;
            else if (over[0] && !over[1] && over[2] && !over[3]) rot = 1;
            else
                throw ParseError("over-strand marks must sit on one opposite slot pair", head.line, head.col);
            int v = static_cast<int>(in.crossing_ids.size());
            in.crossing_ids.push_back(toks[1].text);
            std::array<std::pair<int, int>, 4> slots;
            for (int s = 0; s < 4; ++s) {
                const std::string& id = ids[static_cast<std::size_t>((s + rot) % 4)];
                auto [it, fresh] = edge_index.try_emplace(id, static_cast<int>(in.edge_ids.size()));
                if (fresh) in.edge_ids.push_back(id);
                auto& occ = occurrences[id];
                if (occ.size() >= 2)
                    throw ParseError("edge " + id + " appears more than twice", head.line, head.col);
                slots[static_cast<std::size_t>(s)] = {it->second, static_cast<int>(occ.size())};
                occ.emplace_back(v, s);
            }
            in.slots.push_back(slots);
        } else if (head.text == "basepoint") {
            if (toks.size() != 2) throw ParseError("expected: basepoint <edge>", head.line, head.col);
            basepoint = toks[1].text;
        } else if (head.text == "orient") {
            if (toks.size() != 3 || (toks[2].text != "+" && toks[2].text != "-"))
                throw ParseError("expected: orient <edge> +|-", head.line, head.col);
            orient_edge = toks[1].text;
            orient_plus = toks[2].text == "+";
            orient_line = head.line;
        } else if (head.text == "outer") {
            if (toks.size() != 3 || (toks[2].text != "left" && toks[2].text != "right"))
                throw ParseError("expected: outer <edge> left|right", head.line, head.col);
            outer_edge = toks[1].text;
            outer_left = toks[2].text == "left";
        } else if (head.text == "front" || head.text == "lagrangian") {
            throw ParseError("header must be the first line", head.line, head.col);
        } else {
            throw ParseError("unknown directive '" + head.text + "'", head.line, head.col);
        }
    }
    if (in.crossing_ids.empty()) throw ParseError("diagram has no crossings", 1, 1);
    for (const auto& [id, occ] : occurrences)
        if (occ.size() != 2) throw ParseError("edge " + id + " is dangling", 1, 1);

    auto edge_of = [&](const std::string& id, const char* what) {
        auto it = edge_index.find(id);
        if (it == edge_index.end())
            throw ParseError(std::string(what) + " references unknown edge " + id, 1, 1);
        return it->second;
    };
    if (basepoint.empty()) throw ParseError("missing basepoint line", 1, 1);
    if (orient_edge.empty()) throw ParseError("missing orient line", 1, 1);
    if (outer_edge.empty()) throw ParseError("missing outer line", 1, 1);
    in.basepoint_edge = edge_of(basepoint, "basepoint");
    in.orient_edge = edge_of(orient_edge, "orient");
    in.orient_end0_to_end1 = orient_plus;
    (void)orient_line;
    in.outer_edge = edge_of(outer_edge, "outer");
    in.outer_ref = outer_left ? LagrangianDiagram::BuildInput::OuterRef::knot_left
                              : LagrangianDiagram::BuildInput::OuterRef::knot_right;
    return LagrangianDiagram::build(std::move(in));
}

// ---------------------------------------------------------------------------
// Fronts

namespace {

struct Segment {
    // links: kind 0 = none, 1 = crossing continuation, 2 = cusp partner
    int left_kind = 0, left_other = -1;
    int right_kind = 0, right_other = -1;
    int dir = 0; // +1 rightward, -1 leftward (assigned by traversal)
};

struct WeightedUf {
    std::vector<int> parent;
    std::vector<int> offset; // potential(x) - potential(parent(x))
    int add() {
        parent.push_back(static_cast<int>(parent.size()));
        offset.push_back(0);
        return static_cast<int>(parent.size()) - 1;
    }
    std::pair<int, int> find(int x) {
        if (parent[static_cast<std::size_t>(x)] == x) return {x, 0};
        auto [root, off] = find(parent[static_cast<std::size_t>(x)]);
        parent[static_cast<std::size_t>(x)] = root;
        offset[static_cast<std::size_t>(x)] += off;
        return {root, offset[static_cast<std::size_t>(x)]};
    }
    // impose potential(a) - potential(b) = diff; false on conflict
    bool relate(int a, int b, int diff) {
        auto [ra, oa] = find(a);
        auto [rb, ob] = find(b);
        if (ra == rb) return oa - ob == diff;
        parent[static_cast<std::size_t>(ra)] = rb;
        offset[static_cast<std::size_t>(ra)] = diff + ob - oa;
        return true;
    }
};

} // namespace

FrontDiagram FrontDiagram::build(std::vector<FrontEvent> events, bool orient_plus) {
    FrontDiagram fd;
    fd.events_ = std::move(events);
    fd.orient_plus_ = orient_plus;

    std::vector<Segment> segs;
    std::vector<int> live; // segment index per position, top to bottom
    WeightedUf uf;
    bool maslov_ok = true;
    struct CuspRec {
        bool left;
        int upper, lower;
    };
    std::vector<CuspRec> cusps;
    struct CrossRec {
        int in_upper, in_lower, out_upper, out_lower;
    };
    std::vector<CrossRec> crossings;

    for (const auto& ev : fd.events_) {
        int k = ev.position;
        switch (ev.kind) {
        case FrontEvent::Kind::left_cusp: {
            if (k < 1 || k > static_cast<int>(live.size()) + 1)
                throw Error(Error::Kind::validation, "left cusp position out of range");
            int u = static_cast<int>(segs.size());
            segs.push_back({});
            int l = static_cast<int>(segs.size());
            segs.push_back({});
            uf.add();
            uf.add();
            segs[static_cast<std::size_t>(u)].left_kind = 2;
            segs[static_cast<std::size_t>(u)].left_other = l;
            segs[static_cast<std::size_t>(l)].left_kind = 2;
            segs[static_cast<std::size_t>(l)].left_other = u;
            maslov_ok = uf.relate(u, l, 1) && maslov_ok;
            live.insert(live.begin() + (k - 1), {u, l});
            cusps.push_back({true, u, l});
            break;
        }
        case FrontEvent::Kind::crossing: {
            if (k < 1 || k + 1 > static_cast<int>(live.size()))
                throw Error(Error::Kind::validation, "crossing position out of range");
            int a = live[static_cast<std::size_t>(k - 1)]; // upper incoming, descends
            int b = live[static_cast<std::size_t>(k)];     // lower incoming, ascends
            int a2 = static_cast<int>(segs.size());
            segs.push_back({});
            int b2 = static_cast<int>(segs.size());
            segs.push_back({});
            uf.add();
            uf.add();
            segs[static_cast<std::size_t>(a)].right_kind = 1;
            segs[static_cast<std::size_t>(a)].right_other = a2;
            segs[static_cast<std::size_t>(a2)].left_kind = 1;
            segs[static_cast<std::size_t>(a2)].left_other = a;
            segs[static_cast<std::size_t>(b)].right_kind = 1;
            segs[static_cast<std::size_t>(b)].right_other = b2;
            segs[static_cast<std::size_t>(b2)].left_kind = 1;
            segs[static_cast<std::size_t>(b2)].left_other = b;
            maslov_ok = uf.relate(a, a2, 0) && maslov_ok;
            maslov_ok = uf.relate(b, b2, 0) && maslov_ok;
            live[static_cast<std::size_t>(k - 1)] = b2;
            live[static_cast<std::size_t>(k)] = a2;
            crossings.push_back({a, b, b2, a2});
            break;
        }
        case FrontEvent::Kind::right_cusp: {
            if (k < 1 || k + 1 > static_cast<int>(live.size()))
                throw Error(Error::Kind::validation, "right cusp position out of range");
            int u = live[static_cast<std::size_t>(k - 1)];
            int l = live[static_cast<std::size_t>(k)];
            segs[static_cast<std::size_t>(u)].right_kind = 2;
            segs[static_cast<std::size_t>(u)].right_other = l;
            segs[static_cast<std::size_t>(l)].right_kind = 2;
            segs[static_cast<std::size_t>(l)].right_other = u;
            maslov_ok = uf.relate(u, l, 1) && maslov_ok;
            live.erase(live.begin() + (k - 1), live.begin() + (k + 1));
            cusps.push_back({false, u, l});
            break;
        }
        }
    }
    if (!live.empty()) throw Error(Error::Kind::validation, "front sweep leaves open strands");
    if (segs.empty()) throw Error(Error::Kind::validation, "empty front");

    // orient by walking the closed curve; start on the first cusp's upper strand
    {
        int seg = 0;
        int dir = orient_plus ? 1 : -1;
        std::size_t visited = 0;
        while (segs[static_cast<std::size_t>(seg)].dir == 0) {
            segs[static_cast<std::size_t>(seg)].dir = dir;
            ++visited;
            if (dir > 0) {
                int kind = segs[static_cast<std::size_t>(seg)].right_kind;
                int other = segs[static_cast<std::size_t>(seg)].right_other;
                if (kind == 1) {
                    seg = other; // keep moving right
                } else {
                    seg = other;
                    dir = -1;
                }
            } else {
                int kind = segs[static_cast<std::size_t>(seg)].left_kind;
                int other = segs[static_cast<std::size_t>(seg)].left_other;
                if (kind == 1) {
                    seg = other;
                } else {
                    seg = other;
                    dir = 1;
                }
            }
        }
        if (visited != segs.size())
            throw Error(Error::Kind::validation, "front is not a single knot component");
    }

    // classical invariants from the front
    int up = 0, down = 0;
    for (const auto& c : cusps) {
        int dl = segs[static_cast<std::size_t>(c.lower)].dir;
        if (c.left) {
            (dl < 0 ? up : down) += 1; // incoming lower strand turns upward
        } else {
            (dl > 0 ? up : down) += 1;
        }
    }
    if ((down - up) % 2 != 0) throw Error(Error::Kind::validation, "odd cusp imbalance (internal)");
    int writhe = 0;
    for (const auto& cr : crossings) {
        int dd = segs[static_cast<std::size_t>(cr.in_upper)].dir;  // descending strand
        int da = segs[static_cast<std::size_t>(cr.in_lower)].dir;  // ascending strand
        // descending strand is in front; tangents (dd, -dd) and (da, da)
        int det = dd * da - (-dd) * da;
        writhe += det > 0 ? 1 : -1;
    }
    int right_cusps = 0;
    for (const auto& c : cusps)
        if (!c.left) ++right_cusps;
    fd.inv_.tb = writhe - right_cusps;
    fd.inv_.r = (down - up) / 2;

    fd.maslov_consistent_ = maslov_ok;
    if (maslov_ok) {
        fd.potentials_.resize(segs.size());
        auto [root0, off0] = uf.find(0);
        for (std::size_t s = 0; s < segs.size(); ++s) {
            auto [r, off] = uf.find(static_cast<int>(s));
            (void)r;
            fd.potentials_[s] = off - off0;
        }
    }
    return fd;
}

FrontDiagram parse_front(const std::string& text) {
    auto lines = tokenize_lines(text);
    if (lines.empty()) throw ParseError("empty front file", 1, 1);
    std::size_t first = 0;
    if (lines[0][0].text == "front") first = 1;
    std::vector<FrontEvent> events;
    bool orient_plus = true;
    int xcount = 0, ccount = 0;
    for (std::size_t li = first; li < lines.size(); ++li) {
        const auto& toks = lines[li];
        const Token& head = toks[0];
        if (head.text == "L" || head.text == "X" || head.text == "R") {
            if (toks.size() < 2 || toks.size() > 3)
                throw ParseError("expected: " + head.text + " <position> [id]", head.line, head.col);
            FrontEvent ev;
            ev.position = to_int(toks[1]);
            if (head.text == "L") {
                if (toks.size() == 3) throw ParseError("left cusps take no id", head.line, head.col);
                ev.kind = FrontEvent::Kind::left_cusp;
            } else if (head.text == "X") {
                ev.kind = FrontEvent::Kind::crossing;
                ++xcount;
                ev.id = toks.size() == 3 ? toks[2].text : "x" + std::to_string(xcount);
            } else {
                ev.kind = FrontEvent::Kind::right_cusp;
                ++ccount;
                ev.id = toks.size() == 3 ? toks[2].text : "c" + std::to_string(ccount);
            }
            events.push_back(std::move(ev));
        } else if (head.text == "orient") {
            if (toks.size() != 2 || (toks[1].text != "+" && toks[1].text != "-"))
                throw ParseError("expected: orient +|-", head.line, head.col);
            orient_plus = toks[1].text == "+";
        } else if (head.text == "front" || head.text == "lagrangian") {
            throw ParseError("header must be the first line", head.line, head.col);
        } else {
            throw ParseError("unknown directive '" + head.text + "'", head.line, head.col);
        }
    }
    try {
        return FrontDiagram::build(std::move(events), orient_plus);
    } catch (const Error& e) {
        if (e.kind() == Error::Kind::validation) throw ParseError(e.what(), 1, 1);
        throw;
    }
}

LagrangianDiagram resolve_front(const FrontDiagram& front) {
    LagrangianDiagram::BuildInput in;
    struct Dangle {
        int edge;
        int end;
    };
    std::vector<Dangle> live;
    std::vector<std::array<std::pair<int, int>, 2>> attach; // per edge end: (crossing, slot), -1 = open
    auto new_edge = [&]() {
        int e = static_cast<int>(in.edge_ids.size());
        in.edge_ids.push_back("e" + std::to_string(e + 1));
        attach.push_back({std::make_pair(-1, -1), std::make_pair(-1, -1)});
        return e;
    };
    auto attach_end = [&](Dangle d, int v, int slot) {
        attach[static_cast<std::size_t>(d.edge)][static_cast<std::size_t>(d.end)] = {v, slot};
        in.slots[static_cast<std::size_t>(v)][static_cast<std::size_t>(slot)] = {d.edge, d.end};
    };
    int first_cusp_edge = -1;
    int xcount = 0, ccount = 0;

    for (const auto& ev : front.events()) {
        int k = ev.position;
        switch (ev.kind) {
        case FrontEvent::Kind::left_cusp: {
            int e = new_edge();
            if (first_cusp_edge < 0) first_cusp_edge = e;
            live.insert(live.begin() + (k - 1), {Dangle{e, 0}, Dangle{e, 1}});
            break;
        }
        case FrontEvent::Kind::crossing: {
            int v = static_cast<int>(in.crossing_ids.size());
            ++xcount;
            in.crossing_ids.push_back(!ev.id.empty() ? ev.id : "x" + std::to_string(xcount));
            in.slots.push_back({std::make_pair(-1, -1), std::make_pair(-1, -1), std::make_pair(-1, -1),
                                std::make_pair(-1, -1)});
            // rays UR, UL, LL, LR counterclockwise; the descending strand runs
            // UL -> LR, the ascending one LL -> UR. The over strand must sit on
            // slots {1,3}, so the slot labelling starts at UR or UL accordingly.
            int ur, ul, ll, lr;
            if (kFrontCrossingDescendingOver) {
                ur = 0, ul = 1, ll = 2, lr = 3;
            } else {
                ul = 0, ll = 1, lr = 2, ur = 3;
            }
            attach_end(live[static_cast<std::size_t>(k - 1)], v, ul);
            attach_end(live[static_cast<std::size_t>(k)], v, ll);
            int top = new_edge();
            int bottom = new_edge();
            attach_end(Dangle{top, 0}, v, ur);
            attach_end(Dangle{bottom, 0}, v, lr);
            live[static_cast<std::size_t>(k - 1)] = Dangle{top, 1};
            live[static_cast<std::size_t>(k)] = Dangle{bottom, 1};
            break;
        }
        case FrontEvent::Kind::right_cusp: {
            int v = static_cast<int>(in.crossing_ids.size());
            ++ccount;
            in.crossing_ids.push_back(!ev.id.empty() ? ev.id : "c" + std::to_string(ccount));
            in.slots.push_back({std::make_pair(-1, -1), std::make_pair(-1, -1), std::make_pair(-1, -1),
                                std::make_pair(-1, -1)});
            int ur, ul, ll, lr;
            if (kRightCuspDescendingOver) {
                ur = 0, ul = 1, ll = 2, lr = 3;
            } else {
                ul = 0, ll = 1, lr = 2, ur = 3;
            }
            attach_end(live[static_cast<std::size_t>(k - 1)], v, ul);
            attach_end(live[static_cast<std::size_t>(k)], v, ll);
            int curl = new_edge();
            attach_end(Dangle{curl, 0}, v, lr);
            attach_end(Dangle{curl, 1}, v, ur);
            live.erase(live.begin() + (k - 1), live.begin() + (k + 1));
            break;
        }
        }
    }
    if (!live.empty()) throw Error(Error::Kind::validation, "front sweep leaves open strands");
    if (first_cusp_edge < 0) throw Error(Error::Kind::validation, "front has no left cusp");

    in.basepoint_edge = first_cusp_edge;
    in.orient_edge = first_cusp_edge;
    // the knot runs end1 -> end0 on the first cusp arc when the upper strand
    // points rightward, which is the '+' front orientation
    in.orient_end0_to_end1 = !front.orient_plus();
    in.outer_edge = first_cusp_edge;
    in.outer_ref = LagrangianDiagram::BuildInput::OuterRef::from_end1_left;
    return LagrangianDiagram::build(std::move(in));
}

ParsedDiagramFile parse_lkd(const std::string& text) {
    auto lines = tokenize_lines(text);
    if (lines.empty()) throw ParseError("empty diagram file", 1, 1);
    ParsedDiagramFile out;
    const std::string& head = lines[0][0].text;
    if (head == "front") {
        out.front = parse_front(text);
    } else if (head == "lagrangian") {
        out.lagrangian = parse_lagrangian(text);
    } else {
        throw ParseError("first line must be 'lagrangian' or 'front'", lines[0][0].line, lines[0][0].col);
    }
    return out;
}

LagrangianDiagram ParsedDiagramFile::to_lagrangian() const {
    if (lagrangian) return *lagrangian;
    return resolve_front(*front);
}

} // namespace legdga
