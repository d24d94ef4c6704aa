#include "gendirect/partition.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gendirect {

namespace {

Rational two_thirds_of(const Rational& delta) { return delta.times_int(2).third(); }

RationalPoint box_center(const HyperRectCell& b) {
    RationalPoint c(b.lower.size());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = (b.lower[j] + b.upper[j]).half();
    return c;
}

Rational box_side(const HyperRectCell& b, std::size_t j) { return b.upper[j] - b.lower[j]; }

bool box_contains(const HyperRectCell& b, const RationalPoint& p) {
    for (std::size_t j = 0; j < p.size(); ++j)
        if (p[j] < b.lower[j] || p[j] > b.upper[j]) return false;
    return true;
}

std::size_t point_hash(const RationalPoint& p) {
    RationalKeyHash h;
    std::size_t seed = p.size();
    for (const Rational& c : p)
        seed ^= h(c.key()) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
}

bool same_point(const RationalPoint& a, const RationalPoint& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] != b[j]) return false;
    return true;
}

}  // namespace

Partition::Partition(PartitionScheme scheme, SideRule side_rule, int n, EvalCache* cache,
                     ValuePolicy policy)
    : scheme_(scheme), side_rule_(side_rule), n_(n), cache_(cache), policy_(policy) {
    if (n_ < 1) throw std::invalid_argument("Partition: dimension must be at least 1");
    if (cache_ == nullptr) throw std::invalid_argument("Partition: cache required");
    lambda_ = policy_.lambda > 0.0 ? policy_.lambda : default_lambda(scheme_);
    if (scheme_ == PartitionScheme::DTCS || scheme_ == PartitionScheme::DBVS) {
        if (n_ > 8)
            throw std::invalid_argument(
                "Partition: simplicial schemes keep n! initial cells; n > 8 is not supported");
        init_simplices();
    } else {
        init_boxes();
    }
}

const Element& Partition::element(ElementId id) const {
    auto it = elements_.find(id);
    if (it == elements_.end()) throw std::invalid_argument("Partition: unknown element id");
    return it->second;
}

Sample Partition::make_sample(RationalPoint pos) {
    Sample s;
    s.pos = to_doubles(pos);
    s.position = std::move(pos);
    s.value = cache_->evaluate(s.pos);
    return s;
}

Sample Partition::sample_at(RationalPoint pos, double value) const {
    Sample s;
    s.pos = to_doubles(pos);
    s.position = std::move(pos);
    s.value = value;
    return s;
}

double Partition::box_diagonal(const Element& e) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < e.box.lower.size(); ++j) {
        double s = box_side(e.box, j).value();
        sum += s * s;
    }
    return std::sqrt(sum);
}

double Partition::simplex_longest_edge_len(const Element& e) const {
    auto [a, b] = longest_simplex_edge(e);
    const RationalPoint& va = vertices_[static_cast<std::size_t>(a)];
    const RationalPoint& vb = vertices_[static_cast<std::size_t>(b)];
    double sum = 0.0;
    for (std::size_t j = 0; j < va.size(); ++j) {
        double d = va[j].value() - vb[j].value();
        sum += d * d;
    }
    return std::sqrt(sum);
}

void Partition::stamp_scores(Element& e) const {
    e.mid = element_midpoint(e);
    e.diag = e.kind == CellKind::Box ? box_diagonal(e) : simplex_longest_edge_len(e);
    e.min_sample = std::numeric_limits<double>::infinity();
    for (const Sample& s : e.samples) e.min_sample = std::min(e.min_sample, s.value);
    e.delta = measure(e, effective_measure(policy_.cand_measure, scheme_), lambda_, e.diag);
    e.aggr = aggregate_value(e, effective_aggr(policy_.aggr, scheme_));
}

Element* Partition::insert_box(HyperRectCell cell, std::vector<Sample> samples,
                               int midpoint_sample) {
    Element e;
    e.id = next_id_++;
    e.kind = CellKind::Box;
    e.box = std::move(cell);
    e.samples = std::move(samples);
    e.midpoint_sample = midpoint_sample;
    for ([[maybe_unused]] const Sample& s : e.samples)
        assert(box_contains(e.box, s.position) && "sample outside its cell");
    stamp_scores(e);
    auto [it, ok] = elements_.emplace(e.id, std::move(e));
    assert(ok);
    return &it->second;
}

Element* Partition::insert_simplex(SimplexCell cell, std::vector<Sample> samples,
                                   int midpoint_sample) {
    Element e;
    e.id = next_id_++;
    e.kind = CellKind::Simplex;
    e.simplex = std::move(cell);
    e.samples = std::move(samples);
    e.midpoint_sample = midpoint_sample;
    stamp_scores(e);
    auto [it, ok] = elements_.emplace(e.id, std::move(e));
    assert(ok);
    return &it->second;
}

VertexId Partition::intern_vertex(const RationalPoint& p) {
    std::size_t h = point_hash(p);
    auto& bucket = vertex_lookup_[h];
    for (VertexId id : bucket)
        if (same_point(vertices_[static_cast<std::size_t>(id)], p)) return id;
    VertexId id = static_cast<VertexId>(vertices_.size());
    vertices_.push_back(p);
    vertex_values_.push_back(0.0);
    vertex_has_value_.push_back(false);
    bucket.push_back(id);
    return id;
}

double Partition::vertex_value(VertexId id) {
    auto idx = static_cast<std::size_t>(id);
    if (!vertex_has_value_[idx]) {
        vertex_values_[idx] = cache_->evaluate(to_doubles(vertices_[idx]));
        vertex_has_value_[idx] = true;
    }
    return vertex_values_[idx];
}

void Partition::init_boxes() {
    HyperRectCell cell;
    cell.lower.assign(static_cast<std::size_t>(n_), Rational::from_int(0));
    cell.upper.assign(static_cast<std::size_t>(n_), Rational::from_int(1));
    cell.splits.assign(static_cast<std::size_t>(n_), 0);

    auto uniform = [&](long long num, int p, int q) {
        return RationalPoint(static_cast<std::size_t>(n_), Rational::make(num, p, q));
    };

    switch (scheme_) {
        case PartitionScheme::DTC:
        case PartitionScheme::DBC: {
            Sample center = make_sample(uniform(1, 1, 0));  // (1/2, ..., 1/2)
            insert_box(std::move(cell), {std::move(center)}, 0);
            break;
        }
        case PartitionScheme::DTDV: {
            Sample lo = make_sample(uniform(0, 0, 0));
            Sample hi = make_sample(uniform(1, 0, 0));
            insert_box(std::move(cell), {std::move(lo), std::move(hi)}, -1);
            break;
        }
        case PartitionScheme::DBDP: {
            Sample s1 = make_sample(uniform(1, 0, 1));  // (1/3, ..., 1/3)
            Sample s2 = make_sample(uniform(2, 0, 1));  // (2/3, ..., 2/3)
            insert_box(std::move(cell), {std::move(s1), std::move(s2)}, -1);
            break;
        }
        case PartitionScheme::DBVD: {
            Sample diag = make_sample(uniform(1, 0, 1));    // (1/3, ..., 1/3)
            Sample vertex = make_sample(uniform(1, 0, 0));  // (1, ..., 1)
            // samples[0] is the vertex, samples[1] the 2/3-diagonal point
            insert_box(std::move(cell), {std::move(vertex), std::move(diag)}, -1);
            break;
        }
        default:
            throw std::logic_error("init_boxes: not a box scheme");
    }
}

void Partition::init_simplices() {
    // Kuhn triangulation: one simplex per permutation, all sharing the main
    // diagonal (0,...,0) - (1,...,1).
    std::vector<int> perm(static_cast<std::size_t>(n_));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        RationalPoint v(static_cast<std::size_t>(n_), Rational::from_int(0));
        std::vector<VertexId> ids;
        ids.push_back(intern_vertex(v));
        for (int step : perm) {
            v[static_cast<std::size_t>(step)] = Rational::from_int(1);
            ids.push_back(intern_vertex(v));
        }
        SimplexCell cell{std::move(ids)};
        if (scheme_ == PartitionScheme::DTCS) {
            RationalPoint centroid(static_cast<std::size_t>(n_), Rational::from_int(0));
            for (VertexId id : cell.vertex_ids)
                for (std::size_t j = 0; j < centroid.size(); ++j)
                    centroid[j] = centroid[j] + vertices_[static_cast<std::size_t>(id)][j];
            for (auto& c : centroid) c = c.div_int(n_ + 1);
            Sample s = make_sample(std::move(centroid));
            insert_simplex(std::move(cell), {std::move(s)}, 0);
        } else {  // DBVS: every cube vertex evaluated once through the cache
            std::vector<Sample> samples;
            samples.reserve(cell.vertex_ids.size());
            for (VertexId id : cell.vertex_ids)
                samples.push_back(sample_at(vertices_[static_cast<std::size_t>(id)], vertex_value(id)));
            insert_simplex(std::move(cell), std::move(samples), -1);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

std::vector<int> Partition::longest_box_dims(const Element& e) const {
    std::vector<int> dims;
    Rational best = box_side(e.box, 0);
    if (best.is_zero()) throw std::invalid_argument("longest_box_dims: zero-volume cell");
    dims.push_back(0);
    for (int j = 1; j < n_; ++j) {
        Rational s = box_side(e.box, static_cast<std::size_t>(j));
        if (s > best) {
            best = s;
            dims.assign(1, j);
        } else if (s == best) {
            dims.push_back(j);
        }
    }
    return dims;
}

std::pair<VertexId, VertexId> Partition::longest_simplex_edge(const Element& e) const {
    const auto& ids = e.simplex.vertex_ids;
    double best = -1.0;
    std::pair<VertexId, VertexId> pick{-1, -1};
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            VertexId a = std::min(ids[i], ids[j]);
            VertexId b = std::max(ids[i], ids[j]);
            const RationalPoint& va = vertices_[static_cast<std::size_t>(a)];
            const RationalPoint& vb = vertices_[static_cast<std::size_t>(b)];
            double d2 = 0.0;
            for (std::size_t c = 0; c < va.size(); ++c) {
                double d = va[c].value() - vb[c].value();
                d2 += d * d;
            }
            if (d2 > best ||
                (d2 == best && std::make_pair(a, b) < pick)) {
                best = d2;
                pick = {a, b};
            }
        }
    if (best <= 0.0) throw std::invalid_argument("longest_simplex_edge: degenerate simplex");
    return pick;
}

UnitPoint Partition::element_midpoint(const Element& e) const {
    if (e.kind == CellKind::Box) return to_doubles(box_center(e.box));
    RationalPoint centroid(static_cast<std::size_t>(n_), Rational::from_int(0));
    for (VertexId id : e.simplex.vertex_ids)
        for (std::size_t j = 0; j < centroid.size(); ++j)
            centroid[j] = centroid[j] + vertices_[static_cast<std::size_t>(id)][j];
    for (auto& c : centroid) c = c.div_int(n_ + 1);
    return to_doubles(centroid);
}

double Partition::cell_volume(const Element& e) const {
    if (e.kind == CellKind::Box) {
        double v = 1.0;
        for (std::size_t j = 0; j < e.box.lower.size(); ++j) v *= box_side(e.box, j).value();
        return v;
    }
    // |det(v1-v0, ..., vn-v0)| / n!
    std::size_t n = static_cast<std::size_t>(n_);
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    const RationalPoint& v0 = vertices_[static_cast<std::size_t>(e.simplex.vertex_ids[0])];
    for (std::size_t r = 0; r < n; ++r) {
        const RationalPoint& vr = vertices_[static_cast<std::size_t>(e.simplex.vertex_ids[r + 1])];
        for (std::size_t c = 0; c < n; ++c) m[r][c] = vr[c].value() - v0[c].value();
    }
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (m[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    double fact = 1.0;
    for (int i = 2; i <= n_; ++i) fact *= i;
    return std::abs(det) / fact;
}

double Partition::total_volume() const {
    double sum = 0.0;
    for (const auto& [id, e] : elements_) sum += cell_volume(e);
    return sum;
}

std::vector<ElementId> Partition::subdivide(ElementId id) {
    auto it = elements_.find(id);
    if (it == elements_.end()) throw std::invalid_argument("subdivide: unknown element id");
    const Element parent = it->second;  // copy; the map may rehash below

    std::vector<ElementId> children;
    switch (scheme_) {
        case PartitionScheme::DTC: children = subdivide_dtc(parent); break;
        case PartitionScheme::DTDV: children = subdivide_dtdv(parent); break;
        case PartitionScheme::DTCS: children = subdivide_dtcs(parent); break;
        case PartitionScheme::DBVS: children = subdivide_dbvs(parent); break;
        case PartitionScheme::DBDP:
        case PartitionScheme::DBVD: children = subdivide_bisect_pair(parent); break;
        case PartitionScheme::DBC: children = subdivide_dbc(parent); break;
    }
    elements_.erase(id);
    return children;
}

std::vector<ElementId> Partition::subdivide_dtc(const Element& parent) {
    std::vector<int> dims = longest_box_dims(parent);
    if (side_rule_ == SideRule::One) dims.resize(1);

    RationalPoint center = box_center(parent.box);
    struct Probe {
        int j;
        Sample minus, plus;
        double w;
    };
    std::vector<Probe> probes;
    probes.reserve(dims.size());
    for (int j : dims) {
        Rational off = box_side(parent.box, static_cast<std::size_t>(j)).third();
        RationalPoint pm = center, pp = center;
        pm[static_cast<std::size_t>(j)] = center[static_cast<std::size_t>(j)] - off;
        pp[static_cast<std::size_t>(j)] = center[static_cast<std::size_t>(j)] + off;
        Probe p{j, make_sample(std::move(pm)), make_sample(std::move(pp)), 0.0};
        p.w = std::min(p.minus.value, p.plus.value);
        probes.push_back(std::move(p));
    }
    std::stable_sort(probes.begin(), probes.end(), [](const Probe& a, const Probe& b) {
        return a.w < b.w || (a.w == b.w && a.j < b.j);
    });

    std::vector<ElementId> children;
    HyperRectCell box = parent.box;
    for (Probe& p : probes) {
        std::size_t j = static_cast<std::size_t>(p.j);
        Rational third = box_side(box, j).third();

        HyperRectCell left = box;
        left.upper[j] = box.lower[j] + third;
        left.splits[j] += 1;
        children.push_back(insert_box(std::move(left), {std::move(p.minus)}, 0)->id);

        HyperRectCell right = box;
        right.lower[j] = box.upper[j] - third;
        right.splits[j] += 1;
        children.push_back(insert_box(std::move(right), {std::move(p.plus)}, 0)->id);

        box.lower[j] = box.lower[j] + third;
        box.upper[j] = box.upper[j] - third;
        box.splits[j] += 1;
    }
    // The innermost middle cell keeps the parent's center sample.
    children.push_back(
        insert_box(std::move(box), {parent.samples[static_cast<std::size_t>(parent.midpoint_sample)]}, 0)->id);
    return children;
}

std::vector<ElementId> Partition::subdivide_dtdv(const Element& parent) {
    std::vector<int> dims = longest_box_dims(parent);
    if (side_rule_ == SideRule::One) dims.resize(1);

    Sample u = parent.samples[0];
    Sample v = parent.samples[1];
    HyperRectCell box = parent.box;
    std::vector<ElementId> children;

    for (int dim : dims) {
        std::size_t j = static_cast<std::size_t>(dim);
        Rational step = two_thirds_of(v.position[j] - u.position[j]);
        RationalPoint apos = u.position, bpos = v.position;
        apos[j] = u.position[j] + step;
        bpos[j] = v.position[j] - step;
        Sample a = make_sample(std::move(apos));
        Sample b = make_sample(std::move(bpos));

        Rational third = box_side(box, j).third();
        bool u_at_lower = u.position[j] == box.lower[j];
        assert(u_at_lower || u.position[j] == box.upper[j]);

        HyperRectCell ubox = box, vbox = box;
        if (u_at_lower) {
            ubox.upper[j] = box.lower[j] + third;
            vbox.lower[j] = box.upper[j] - third;
        } else {
            ubox.lower[j] = box.upper[j] - third;
            vbox.upper[j] = box.lower[j] + third;
        }
        ubox.splits[j] += 1;
        vbox.splits[j] += 1;
        children.push_back(insert_box(std::move(ubox), {u, b}, -1)->id);
        children.push_back(insert_box(std::move(vbox), {a, v}, -1)->id);

        box.lower[j] = box.lower[j] + third;
        box.upper[j] = box.upper[j] - third;
        box.splits[j] += 1;
        u = std::move(b);
        v = std::move(a);
    }
    children.push_back(insert_box(std::move(box), {std::move(u), std::move(v)}, -1)->id);
    return children;
}

std::vector<ElementId> Partition::subdivide_dtcs(const Element& parent) {
    auto [aid, bid] = longest_simplex_edge(parent);
    const RationalPoint va = vertices_[static_cast<std::size_t>(aid)];
    const RationalPoint vb = vertices_[static_cast<std::size_t>(bid)];

    RationalPoint p1(va.size()), p2(va.size());
    for (std::size_t j = 0; j < va.size(); ++j) {
        Rational third = (vb[j] - va[j]).third();
        p1[j] = va[j] + third;
        p2[j] = va[j] + third.times_int(2);
    }
    VertexId id1 = intern_vertex(p1);
    VertexId id2 = intern_vertex(p2);

    auto replaced = [&](VertexId from, VertexId to) {
        SimplexCell cell = parent.simplex;
        for (VertexId& v : cell.vertex_ids)
            if (v == from) v = to;
        return cell;
    };

    auto centroid_of = [&](const SimplexCell& cell) {
        RationalPoint c(static_cast<std::size_t>(n_), Rational::from_int(0));
        for (VertexId id : cell.vertex_ids)
            for (std::size_t j = 0; j < c.size(); ++j)
                c[j] = c[j] + vertices_[static_cast<std::size_t>(id)][j];
        for (auto& x : c) x = x.div_int(n_ + 1);
        return c;
    };

    std::vector<ElementId> children;
    SimplexCell near = replaced(bid, id1);
    children.push_back(insert_simplex(near, {make_sample(centroid_of(near))}, 0)->id);

    // Middle child's centroid coincides with the parent's; reuse its sample.
    SimplexCell mid = replaced(aid, id1);
    for (VertexId& v : mid.vertex_ids)
        if (v == bid) v = id2;
    children.push_back(
        insert_simplex(std::move(mid), {parent.samples[static_cast<std::size_t>(parent.midpoint_sample)]}, 0)->id);

    SimplexCell far = replaced(aid, id2);
    children.push_back(insert_simplex(far, {make_sample(centroid_of(far))}, 0)->id);
    return children;
}

std::vector<ElementId> Partition::subdivide_dbvs(const Element& parent) {
    auto [aid, bid] = longest_simplex_edge(parent);
    const RationalPoint& va = vertices_[static_cast<std::size_t>(aid)];
    const RationalPoint& vb = vertices_[static_cast<std::size_t>(bid)];

    RationalPoint mid(va.size());
    for (std::size_t j = 0; j < va.size(); ++j) mid[j] = (va[j] + vb[j]).half();
    VertexId mid_id = intern_vertex(mid);
    vertex_value(mid_id);  // at most one new evaluation

    auto build = [&](VertexId drop) {
        SimplexCell cell = parent.simplex;
        for (VertexId& v : cell.vertex_ids)
            if (v == drop) v = mid_id;
        std::vector<Sample> samples;
        samples.reserve(cell.vertex_ids.size());
        for (VertexId id : cell.vertex_ids)
            samples.push_back(sample_at(vertices_[static_cast<std::size_t>(id)], vertex_value(id)));
        return insert_simplex(std::move(cell), std::move(samples), -1)->id;
    };

    return {build(bid), build(aid)};
}

std::vector<ElementId> Partition::subdivide_bisect_pair(const Element& parent) {
    std::vector<int> dims = longest_box_dims(parent);
    if (side_rule_ == SideRule::One) dims.resize(1);

    struct Piece {
        HyperRectCell box;
        Sample s0, s1;  // DBDP: two diagonal points; DBVD: [vertex, 2/3-diagonal point]
    };
    std::vector<Piece> pieces;
    pieces.push_back({parent.box, parent.samples[0], parent.samples[1]});

    const bool vertex_scheme = scheme_ == PartitionScheme::DBVD;

    for (int dim : dims) {
        std::size_t j = static_cast<std::size_t>(dim);
        std::vector<Piece> next;
        next.reserve(pieces.size() * 2);
        for (Piece& piece : pieces) {
            Rational mid = (piece.box.lower[j] + piece.box.upper[j]).half();
            HyperRectCell low = piece.box, high = piece.box;
            low.upper[j] = mid;
            high.lower[j] = mid;
            low.splits[j] += 1;
            high.splits[j] += 1;

            if (!vertex_scheme) {
                // DBDP: each half keeps the diagonal point that falls inside it
                // and adds its reflection through the half's center.
                Sample* into_low = piece.s0.position[j] < mid ? &piece.s0 : &piece.s1;
                Sample* into_high = into_low == &piece.s0 ? &piece.s1 : &piece.s0;
                auto reflect = [&](const HyperRectCell& half, const Sample& inherited) {
                    RationalPoint npos(inherited.position.size());
                    for (std::size_t c = 0; c < npos.size(); ++c)
                        npos[c] = half.lower[c] + half.upper[c] - inherited.position[c];
                    return make_sample(std::move(npos));
                };
                Sample nl = reflect(low, *into_low);
                next.push_back({std::move(low), *into_low, std::move(nl)});
                Sample nh = reflect(high, *into_high);
                next.push_back({std::move(high), *into_high, std::move(nh)});
            } else {
                // DBVD: the vertex-sample half re-samples a fresh 2/3-diagonal
                // point; the other half turns its inherited diagonal point back
                // into a vertex/diagonal pair by evaluating the matching corner.
                Sample& v = piece.s0;
                Sample& p = piece.s1;
                bool v_low = v.position[j] == piece.box.lower[j];
                assert(v_low || v.position[j] == piece.box.upper[j]);
                HyperRectCell& vhalf = v_low ? low : high;
                HyperRectCell& phalf = v_low ? high : low;

                RationalPoint dpos(v.position.size());
                for (std::size_t c = 0; c < dpos.size(); ++c) {
                    Rational opp = v.position[c] == vhalf.lower[c] ? vhalf.upper[c] : vhalf.lower[c];
                    dpos[c] = v.position[c] + two_thirds_of(opp - v.position[c]);
                }

                RationalPoint vpos = v.position;
                vpos[j] = v_low ? piece.box.upper[j] : piece.box.lower[j];

                if (v_low) {
                    Sample d = make_sample(std::move(dpos));
                    next.push_back({std::move(vhalf), v, std::move(d)});
                    Sample nv = make_sample(std::move(vpos));
                    next.push_back({std::move(phalf), std::move(nv), p});
                } else {
                    Sample nv = make_sample(std::move(vpos));
                    next.push_back({std::move(phalf), std::move(nv), p});
                    Sample d = make_sample(std::move(dpos));
                    next.push_back({std::move(vhalf), v, std::move(d)});
                }
            }
        }
        pieces = std::move(next);
    }

    std::vector<ElementId> children;
    children.reserve(pieces.size());
    for (Piece& piece : pieces)
        children.push_back(
            insert_box(std::move(piece.box), {std::move(piece.s0), std::move(piece.s1)}, -1)->id);
    return children;
}

std::vector<ElementId> Partition::subdivide_dbc(const Element& parent) {
    std::vector<int> dims = longest_box_dims(parent);
    if (side_rule_ == SideRule::One) dims.resize(1);

    struct Piece {
        HyperRectCell box;
        std::vector<Sample> samples;  // samples[0] is the piece's own center
    };
    Piece root{parent.box, parent.samples};

    if (dims.size() > 1) {
        // Probe both prospective half-centers per tied dimension to fix the
        // division order (ascending best probe value, then dimension index).
        RationalPoint center = box_center(parent.box);
        struct Probe {
            int j;
            double w;
        };
        std::vector<Probe> probes;
        for (int dim : dims) {
            std::size_t j = static_cast<std::size_t>(dim);
            Rational off = box_side(parent.box, j).half().half();
            RationalPoint pm = center, pp = center;
            pm[j] = center[j] - off;
            pp[j] = center[j] + off;
            Sample sm = make_sample(std::move(pm));
            Sample sp = make_sample(std::move(pp));
            probes.push_back({dim, std::min(sm.value, sp.value)});
            for (Sample* s : {&sm, &sp}) {
                bool dup = false;
                for (const Sample& have : root.samples)
                    if (same_point(have.position, s->position)) {
                        dup = true;
                        break;
                    }
                if (!dup) root.samples.push_back(std::move(*s));
            }
        }
        std::stable_sort(probes.begin(), probes.end(), [](const Probe& a, const Probe& b) {
            return a.w < b.w || (a.w == b.w && a.j < b.j);
        });
        for (std::size_t i = 0; i < probes.size(); ++i) dims[i] = probes[i].j;
    }

    std::vector<Piece> pieces;
    pieces.push_back(std::move(root));
    for (int dim : dims) {
        std::size_t j = static_cast<std::size_t>(dim);
        std::vector<Piece> next;
        next.reserve(pieces.size() * 2);
        for (Piece& piece : pieces) {
            Rational mid = (piece.box.lower[j] + piece.box.upper[j]).half();
            for (int side = 0; side < 2; ++side) {
                HyperRectCell half = piece.box;
                (side == 0 ? half.upper[j] : half.lower[j]) = mid;
                half.splits[j] += 1;
                Sample center_sample = make_sample(box_center(half));
                Piece child{std::move(half), {}};
                child.samples.push_back(std::move(center_sample));
                for (const Sample& s : piece.samples) {
                    if (!box_contains(child.box, s.position)) continue;
                    bool dup = false;
                    for (const Sample& have : child.samples)
                        if (same_point(have.position, s.position)) {
                            dup = true;
                            break;
                        }
                    if (!dup) child.samples.push_back(s);
                }
                next.push_back(std::move(child));
            }
        }
        pieces = std::move(next);
    }

    std::vector<ElementId> children;
    children.reserve(pieces.size());
    for (Piece& piece : pieces)
        children.push_back(insert_box(std::move(piece.box), std::move(piece.samples), 0)->id);
    return children;
}

}  // namespace gendirect
