#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "legdga/errors.hpp"

namespace legdga {

// Legendrian knot diagrams: Lagrangian (xy) projections as 4-valent planar
// graphs with rotation systems, fronts as left-to-right event sweeps, the
// front resolution procedure, classical invariants, Reeb chord gradings and
// immersed disk enumeration.

struct ClassicalInvariants {
    int tb = 0;
    int r = 0;
};

// An immersed convex-cornered disk with exactly one positive corner.
// Negative corners are listed counterclockwise from the positive corner;
// t_power counts signed passes over the basepoint.
struct Disk {
    std::size_t positive_corner = 0;
    std::vector<std::size_t> negative_corners;
    int t_power = 0;
};

class LagrangianDiagram {
public:
    struct BuildInput {
        std::vector<std::string> crossing_ids;
        // per crossing, counterclockwise rays; over-strand occupies rays {1,3}
        std::vector<std::array<std::pair<int, int>, 4>> slots; // (edge, end)
        std::vector<std::string> edge_ids;
        int basepoint_edge = -1;
        int orient_edge = -1;
        bool orient_end0_to_end1 = true;
        int outer_edge = -1;
        // outer face description: either the side relative to the knot
        // orientation (parser) or relative to traversal from end0 (resolution)
        enum class OuterRef { knot_left, knot_right, from_end0_left, from_end1_left } outer_ref =
            OuterRef::knot_left;
    };

    static LagrangianDiagram build(BuildInput in);

    std::size_t num_crossings() const { return crossing_ids_.size(); }
    std::size_t num_edges() const { return edge_ids_.size(); }
    std::size_t num_faces() const { return face_sizes_.size(); }
    const std::string& crossing_id(std::size_t v) const { return crossing_ids_.at(v); }
    const std::string& edge_id(std::size_t e) const { return edge_ids_.at(e); }
    const std::vector<std::string>& crossing_ids() const { return crossing_ids_; }
    std::optional<std::size_t> find_crossing(const std::string& id) const;
    const std::string& basepoint_edge() const { return edge_ids_.at(basepoint_edge_); }

    ClassicalInvariants classical_invariants() const;

    // Degree of every Reeb chord via capping path rotation numbers; requires r = 0.
    std::vector<int> chord_gradings() const;

    std::vector<Disk> disks() const;

    LagrangianDiagram reversed() const;
    LagrangianDiagram with_basepoint(const std::string& edge_id) const;

    std::string save_lkd() const;

private:
    LagrangianDiagram() = default;

    BuildInput to_build_input() const;
    std::size_t dart(std::size_t v, int slot) const { return 4 * v + static_cast<std::size_t>(slot); }
    bool knot_leaves_via(std::size_t d) const; // knot orientation exits the crossing by dart d
    int quarter_turning(const std::vector<int>& net_edge) const;
    std::vector<int> face_windings(const std::vector<int>& net_edge) const;
    void trace_faces();
    void orient();
    void validate() const;

    std::vector<std::string> crossing_ids_;
    std::vector<std::string> edge_ids_;
    // darts: index 4v + slot; each is one edge end
    std::vector<int> dart_edge_;
    std::vector<int> dart_mate_;      // other end of the same edge
    std::vector<int> dart_end_;       // 0/1: which declared end of the edge
    std::vector<int> edge_dart_[2];   // per edge: dart of end0 / end1
    std::vector<bool> edge_forward_;  // knot traverses end0 -> end1
    int basepoint_edge_ = -1;
    int orient_edge_ = -1;
    bool orient_end0_to_end1_ = true;
    std::vector<int> face_of_dart_;
    std::vector<int> face_sizes_;
    int outer_face_ = -1;
    BuildInput::OuterRef outer_ref_ = BuildInput::OuterRef::knot_left;
    int outer_edge_ = -1;
};

LagrangianDiagram parse_lagrangian(const std::string& text);

struct FrontEvent {
    enum class Kind { left_cusp, crossing, right_cusp };
    Kind kind;
    int position = 1; // 1-based strand position from the top
    std::string id;   // crossing/right-cusp label; auto-assigned when empty
};

class FrontDiagram {
public:
    static FrontDiagram build(std::vector<FrontEvent> events, bool orient_plus);

    const std::vector<FrontEvent>& events() const { return events_; }
    ClassicalInvariants classical_invariants() const { return inv_; }
    bool maslov_consistent() const { return maslov_consistent_; }
    // Maslov potential per strand segment (indexed by creation order), when consistent.
    const std::vector<int>& maslov_potentials() const { return potentials_; }
    bool orient_plus() const { return orient_plus_; }

private:
    FrontDiagram() = default;
    std::vector<FrontEvent> events_;
    bool orient_plus_ = true;
    ClassicalInvariants inv_;
    bool maslov_consistent_ = true;
    std::vector<int> potentials_;
};

FrontDiagram parse_front(const std::string& text);

// Standard resolution: one crossing per front crossing plus one per right cusp.
// The basepoint lands on the arc of the first left cusp.
LagrangianDiagram resolve_front(const FrontDiagram& front);

// Dispatches on the .lkd header line.
struct ParsedDiagramFile {
    std::optional<LagrangianDiagram> lagrangian;
    std::optional<FrontDiagram> front;
    LagrangianDiagram to_lagrangian() const;
};
ParsedDiagramFile parse_lkd(const std::string& text);

} // namespace legdga
