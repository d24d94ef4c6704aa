#ifndef GENDIRECT_PARTITION_HPP
#define GENDIRECT_PARTITION_HPP

#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gendirect/geometry.hpp"
#include "gendirect/options.hpp"
#include "gendirect/scoring.hpp"

namespace gendirect {

/// The live collection of partition cells for one run.
///
/// Construction samples the scheme's initial points (Table-style
/// initialization); subdivide() replaces one element by its children,
/// evaluating new sample points through the shared cache. All cell geometry is
/// kept in exact binary-ternary rationals, so repeated subdivision sequences
/// replay bit-identically.
class Partition {
public:
    Partition(PartitionScheme scheme, SideRule side_rule, int n, EvalCache* cache,
              ValuePolicy policy = {});

    PartitionScheme scheme() const { return scheme_; }
    SideRule side_rule() const { return side_rule_; }
    int dimension() const { return n_; }
    EvalCache& cache() { return *cache_; }
    const EvalCache& cache() const { return *cache_; }

    const std::map<ElementId, Element>& elements() const { return elements_; }
    const Element& element(ElementId id) const;
    std::size_t size() const { return elements_.size(); }

    /// Subdivides one element per the scheme and side rule; the parent leaves
    /// the partition and the returned children take its place.
    std::vector<ElementId> subdivide(ElementId id);

    /// All dimensions attaining the maximum side length, ascending (boxes).
    std::vector<int> longest_box_dims(const Element& e) const;

    /// The vertex pair with maximum pairwise distance; ties resolve to the
    /// lowest (id_low, id_high) pair (simplices).
    std::pair<VertexId, VertexId> longest_simplex_edge(const Element& e) const;

    /// Box center or simplex vertex centroid, in unit doubles.
    UnitPoint element_midpoint(const Element& e) const;

    const RationalPoint& vertex(VertexId id) const { return vertices_[static_cast<std::size_t>(id)]; }
    std::size_t vertex_count() const { return vertices_.size(); }

    /// Sum of cell volumes; 1 within 1e-9 while the partition tiles the cube.
    double total_volume() const;

    double cell_volume(const Element& e) const;

private:
    Element* insert_box(HyperRectCell cell, std::vector<Sample> samples, int midpoint_sample);
    Element* insert_simplex(SimplexCell cell, std::vector<Sample> samples, int midpoint_sample);
    void stamp_scores(Element& e) const;
    double box_diagonal(const Element& e) const;
    double simplex_longest_edge_len(const Element& e) const;

    VertexId intern_vertex(const RationalPoint& p);
    double vertex_value(VertexId id);
    Sample make_sample(RationalPoint pos);
    Sample sample_at(RationalPoint pos, double value) const;

    void init_boxes();
    void init_simplices();

    std::vector<ElementId> subdivide_dtc(const Element& parent);
    std::vector<ElementId> subdivide_dtdv(const Element& parent);
    std::vector<ElementId> subdivide_dtcs(const Element& parent);
    std::vector<ElementId> subdivide_dbvs(const Element& parent);
    std::vector<ElementId> subdivide_bisect_pair(const Element& parent);  // DBDP / DBVD
    std::vector<ElementId> subdivide_dbc(const Element& parent);

    PartitionScheme scheme_;
    SideRule side_rule_;
    int n_;
    EvalCache* cache_;
    ValuePolicy policy_;
    double lambda_;

    std::map<ElementId, Element> elements_;
    ElementId next_id_ = 0;

    // Shared vertex table (simplex schemes); values are present for DBVS.
    std::vector<RationalPoint> vertices_;
    std::vector<double> vertex_values_;
    std::vector<bool> vertex_has_value_;
    std::unordered_map<std::size_t, std::vector<VertexId>> vertex_lookup_;
};

}  // namespace gendirect

#endif  // GENDIRECT_PARTITION_HPP
