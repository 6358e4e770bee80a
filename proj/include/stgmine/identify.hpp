#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stgmine/errors.hpp"
#include "stgmine/object_template.hpp"
#include "stgmine/region.hpp"
#include "stgmine/snapshot.hpp"

namespace stgmine {

// ---------------------------------------------------------------------------
// Identification CSP
//
// Variables are the template parts, domains are the region ids of the current
// snapshot, constraints are the part classes, the attribute predicates, the
// pairwise relations, and pairwise all-different. The first snapshot is
// solved statically; later snapshots are re-solved incrementally with nogood
// recording.
// ---------------------------------------------------------------------------

enum class IdConstraintKind { PartClass, PartAttr, PartsRelation, AllDiffPair };

struct IdConstraint {
    int id = 0;
    IdConstraintKind kind = IdConstraintKind::PartClass;
    std::vector<std::string> scope; // 1 or 2 part names
    bool active = true;

    std::string class_label;            // PartClass
    AttrPredicate pred;                 // PartAttr
    std::vector<RelationLabel> allowed; // PartsRelation

    std::string describe() const
    {
        switch (kind) {
            case IdConstraintKind::PartClass:
                return "class(" + scope[0] + ") = " + class_label;
            case IdConstraintKind::PartAttr:
                return scope[0] + "." + pred.attr + " " + std::string(to_string(pred.op)) + " " +
                       std::to_string(pred.value);
            case IdConstraintKind::PartsRelation: {
                std::string labels;
                for (const RelationLabel& l : allowed)
                    labels += (labels.empty() ? "" : "|") + to_string(l);
                return "rel(" + scope[0] + ", " + scope[1] + ") in {" + labels + "}";
            }
            case IdConstraintKind::AllDiffPair:
                return scope[0] + " != " + scope[1];
        }
        return "?";
    }
};

inline std::vector<IdConstraint> build_constraints(const ObjectTemplate& tmpl)
{
    check_template(tmpl);
    std::vector<IdConstraint> out;
    int next_id = 0;
    for (const PartVar& p : tmpl.parts) {
        IdConstraint c;
        c.id = next_id++;
        c.kind = IdConstraintKind::PartClass;
        c.scope = {p.name};
        c.class_label = p.class_label;
        out.push_back(c);
        for (const AttrPredicate& pred : p.preds) {
            IdConstraint a;
            a.id = next_id++;
            a.kind = IdConstraintKind::PartAttr;
            a.scope = {p.name};
            a.pred = pred;
            out.push_back(a);
        }
    }
    for (const RelationConstraintSpec& r : tmpl.relations) {
        IdConstraint c;
        c.id = next_id++;
        c.kind = IdConstraintKind::PartsRelation;
        c.scope = {r.a, r.b};
        c.allowed = r.allowed;
        out.push_back(c);
    }
    for (std::size_t i = 0; i < tmpl.parts.size(); ++i) {
        for (std::size_t j = i + 1; j < tmpl.parts.size(); ++j) {
            IdConstraint c;
            c.id = next_id++;
            c.kind = IdConstraintKind::AllDiffPair;
            c.scope = {std::min(tmpl.parts[i].name, tmpl.parts[j].name),
                       std::max(tmpl.parts[i].name, tmpl.parts[j].name)};
            out.push_back(c);
        }
    }
    return out;
}

/// Evaluation is total: a value that no longer names a region fails every
/// constraint on its part, which is what routes stale assignments into repair.
inline bool eval_constraint(const IdConstraint& c, const IdAssignment& assignment,
                            const std::map<int, Region>& regions)
{
    auto region_of = [&](const std::string& part) -> const Region* {
        auto va = assignment.find(part);
        if (va == assignment.end())
            return nullptr;
        auto rr = regions.find(va->second);
        return rr == regions.end() ? nullptr : &rr->second;
    };
    switch (c.kind) {
        case IdConstraintKind::PartClass: {
            const Region* r = region_of(c.scope[0]);
            return r && r->class_label() == c.class_label;
        }
        case IdConstraintKind::PartAttr: {
            const Region* r = region_of(c.scope[0]);
            if (!r)
                return false;
            auto v = r->attr_value(c.pred.attr);
            return v && cmp_eval(c.pred.op, *v, c.pred.value);
        }
        case IdConstraintKind::PartsRelation: {
            const Region* ra = region_of(c.scope[0]);
            const Region* rb = region_of(c.scope[1]);
            if (!ra || !rb)
                return false;
            for (const RelationLabel& l : c.allowed)
                if (relation_holds(l, *ra, *rb))
                    return true;
            return false;
        }
        case IdConstraintKind::AllDiffPair: {
            auto va = assignment.find(c.scope[0]);
            auto vb = assignment.find(c.scope[1]);
            return va != assignment.end() && vb != assignment.end() && va->second != vb->second;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Nogoods
// ---------------------------------------------------------------------------

/// (lhs_1 = v_1) ∧ ... ∧ (lhs_k = v_k) ⇒ rhs_part ≠ rhs_forbidden.
/// The justification is the id of the constraint whose violation produced the
/// nogood; it must stay active for the nogood to remain valid.
struct Nogood {
    std::vector<std::pair<std::string, int>> lhs; // sorted by part name
    std::string rhs_part;
    int rhs_forbidden = 0;
    int justification = 0;
    bool derived = false; // resolution product of other nogoods

    auto key() const { return std::tuple(lhs, rhs_part, rhs_forbidden, justification); }

    bool lhs_matches(const IdAssignment& assignment) const
    {
        for (const auto& [part, value] : lhs) {
            auto it = assignment.find(part);
            if (it == assignment.end() || it->second != value)
                return false;
        }
        return true;
    }

    bool mentions_region(int region_id) const
    {
        if (rhs_forbidden == region_id)
            return true;
        for (const auto& [part, value] : lhs)
            if (value == region_id)
                return true;
        return false;
    }
};

class NogoodStore {
public:
    using Observer = std::function<void(const Nogood&)>;

    /// Returns false when an identical nogood is already stored.
    bool add(const Nogood& nogood)
    {
        if (!keys_.insert(nogood.key()).second)
            return false;
        items_.push_back(nogood);
        if (observer_)
            observer_(nogood);
        return true;
    }

    const std::vector<Nogood>& items() const { return items_; }
    std::size_t size() const { return items_.size(); }

    template <typename Pred> void purge_if(Pred pred)
    {
        std::vector<Nogood> kept;
        for (Nogood& n : items_)
            if (!pred(n))
                kept.push_back(std::move(n));
        items_ = std::move(kept);
        keys_.clear();
        for (const Nogood& n : items_)
            keys_.insert(n.key());
    }

    /// First live nogood forbidding (part = value) under the assignment.
    const Nogood* blocking(const std::string& part, int value, const IdAssignment& assignment,
                           const std::set<int>& active_constraints) const
    {
        for (const Nogood& n : items_) {
            if (n.rhs_part != part || n.rhs_forbidden != value)
                continue;
            if (!active_constraints.contains(n.justification))
                continue;
            if (n.lhs_matches(assignment))
                return &n;
        }
        return nullptr;
    }

    void set_observer(Observer observer) { observer_ = std::move(observer); }

private:
    std::vector<Nogood> items_;
    std::set<decltype(std::declval<Nogood>().key())> keys_;
    Observer observer_;
};

// ---------------------------------------------------------------------------
// Static resolution: chronological backtracking with forward checking.
// Variables in template declaration order, values ascending region id.
// ---------------------------------------------------------------------------

inline std::optional<IdAssignment> solve_static(const ObjectTemplate& tmpl, const Snapshot& snapshot)
{
    check_template(tmpl);
    check_unique_region_ids(snapshot);
    const std::size_t n = tmpl.parts.size();

    // Unary-filtered domains.
    std::vector<std::vector<int>> domains(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const Region& r : snapshot.regions) {
            if (r.class_label() != tmpl.parts[i].class_label)
                continue;
            bool ok = true;
            for (const AttrPredicate& pred : tmpl.parts[i].preds) {
                auto v = r.attr_value(pred.attr);
                if (!v || !cmp_eval(pred.op, *v, pred.value)) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                domains[i].push_back(r.id());
        }
        std::sort(domains[i].begin(), domains[i].end());
    }

    std::map<std::string, std::size_t> index_of;
    for (std::size_t i = 0; i < n; ++i)
        index_of.emplace(tmpl.parts[i].name, i);

    // Binary constraints grouped per variable pair for the forward check.
    struct Binary {
        std::size_t a, b;
        const RelationConstraintSpec* spec;
    };
    std::vector<Binary> binaries;
    for (const RelationConstraintSpec& r : tmpl.relations)
        binaries.push_back({index_of.at(r.a), index_of.at(r.b), &r});

    auto regions = snapshot.regions_by_id();
    auto pair_ok = [&](std::size_t i, int vi, std::size_t j, int vj) {
        if (vi == vj)
            return false; // alldiff
        for (const Binary& bc : binaries) {
            if (!((bc.a == i && bc.b == j) || (bc.a == j && bc.b == i)))
                continue;
            const Region& ra = regions.at(bc.a == i ? vi : vj);
            const Region& rb = regions.at(bc.b == j ? vj : vi);
            bool ok = false;
            for (const RelationLabel& l : bc.spec->allowed)
                if (relation_holds(l, ra, rb)) {
                    ok = true;
                    break;
                }
            if (!ok)
                return false;
        }
        return true;
    };

    std::vector<int> chosen(n, -1);
    std::function<bool(std::size_t, std::vector<std::vector<int>>)> descend =
        [&](std::size_t depth, std::vector<std::vector<int>> live) -> bool {
        if (depth == n)
            return true;
        for (int value : live[depth]) {
            chosen[depth] = value;
            // Forward check: prune the remaining domains.
            std::vector<std::vector<int>> next = live;
            bool wiped = false;
            for (std::size_t j = depth + 1; j < n && !wiped; ++j) {
                std::vector<int> kept;
                for (int w : next[j])
                    if (pair_ok(depth, value, j, w))
                        kept.push_back(w);
                next[j] = std::move(kept);
                wiped = next[j].empty();
            }
            if (!wiped && descend(depth + 1, std::move(next)))
                return true;
        }
        chosen[depth] = -1;
        return false;
    };

    if (!descend(0, domains))
        return std::nullopt;
    IdAssignment out;
    for (std::size_t i = 0; i < n; ++i)
        out[tmpl.parts[i].name] = chosen[i];
    return out;
}

// ---------------------------------------------------------------------------
// Dynamic resolution state
// ---------------------------------------------------------------------------

/// Everything the incremental solver carries between snapshots: the current
/// domains (regions), the previous solution, the nogood store, and the
/// pending/verified split of the active constraints.
class DynCspState {
public:
    DynCspState(ObjectTemplate tmpl, const Snapshot& snapshot, IdAssignment solution)
        : tmpl_(std::move(tmpl)), regions_(snapshot.regions_by_id()), assignment_(std::move(solution)),
          constraints_(build_constraints(tmpl_))
    {
        check_unique_region_ids(snapshot);
        for (const IdConstraint& c : constraints_)
            active_.insert(c.id);
    }

    const ObjectTemplate& tmpl() const { return tmpl_; }
    const std::map<int, Region>& regions() const { return regions_; }
    std::map<int, Region>& regions() { return regions_; }
    const IdAssignment& assignment() const { return assignment_; }
    IdAssignment& assignment() { return assignment_; }
    const std::vector<IdConstraint>& constraints() const { return constraints_; }
    NogoodStore& nogoods() { return nogoods_; }
    const NogoodStore& nogoods() const { return nogoods_; }
    const std::set<int>& active_constraints() const { return active_; }
    const std::set<int>& pending() const { return pending_; }
    const std::set<int>& verified() const { return verified_; }

    const IdConstraint& constraint(int id) const { return constraints_.at(static_cast<std::size_t>(id)); }

    /// Sorted region ids — the shared domain of every part variable.
    std::vector<int> domain() const
    {
        std::vector<int> out;
        for (const auto& [id, region] : regions_)
            out.push_back(id);
        return out;
    }

    /// Deactivate a constraint and purge every nogood it justifies, plus all
    /// derived nogoods (their support may include the removed constraint).
    void remove_constraint(int id)
    {
        if (!active_.erase(id))
            return;
        constraints_[static_cast<std::size_t>(id)].active = false;
        pending_.erase(id);
        verified_.erase(id);
        nogoods_.purge_if([&](const Nogood& n) { return n.derived || n.justification == id; });
    }

    /// Append a new relation constraint (takes effect on the next solve).
    int add_relation_constraint(const RelationConstraintSpec& spec)
    {
        IdConstraint c;
        c.id = static_cast<int>(constraints_.size());
        c.kind = IdConstraintKind::PartsRelation;
        c.scope = {spec.a, spec.b};
        c.allowed = spec.allowed;
        constraints_.push_back(c);
        active_.insert(c.id);
        return c.id;
    }

    std::size_t reassignments_in_last_solve() const { return reassignments_; }

    // internal to the solver
    std::set<int> pending_;
    std::set<int> verified_;
    std::size_t reassignments_ = 0;

private:
    ObjectTemplate tmpl_;
    std::map<int, Region> regions_;
    IdAssignment assignment_;
    std::vector<IdConstraint> constraints_;
    NogoodStore nogoods_;
    std::set<int> active_;
};

// ---------------------------------------------------------------------------
// Snapshot deltas
// ---------------------------------------------------------------------------

struct RelationChange {
    int a = 0;
    int b = 0;
    RelationLabel now;

    friend bool operator==(const RelationChange&, const RelationChange&) = default;
};

/// Difference between consecutive snapshots: vanished/appeared domain values
/// and changed relation facts (with the changed region payloads needed to
/// apply them).
struct SnapshotDelta {
    std::vector<int> removed;
    std::vector<Region> added;
    std::vector<Region> changed;
    std::vector<RelationChange> relation_changes;

    bool empty() const
    {
        return removed.empty() && added.empty() && changed.empty() && relation_changes.empty();
    }
};

inline SnapshotDelta delta_from_snapshot(const DynCspState& state, const Snapshot& next)
{
    check_unique_region_ids(next);
    SnapshotDelta delta;
    auto next_regions = next.regions_by_id();
    for (const auto& [id, region] : state.regions()) {
        auto it = next_regions.find(id);
        if (it == next_regions.end())
            delta.removed.push_back(id);
        else if (!(it->second == region))
            delta.changed.push_back(it->second);
    }
    for (const auto& [id, region] : next_regions)
        if (!state.regions().contains(id))
            delta.added.push_back(region);

    // Relation facts that flipped between regions present in both snapshots.
    for (auto ia = state.regions().begin(); ia != state.regions().end(); ++ia) {
        for (auto ib = std::next(ia); ib != state.regions().end(); ++ib) {
            auto na = next_regions.find(ia->first);
            auto nb = next_regions.find(ib->first);
            if (na == next_regions.end() || nb == next_regions.end())
                continue;
            RelationLabel before = relation(ia->second, ib->second);
            RelationLabel after = relation(na->second, nb->second);
            if (before != after)
                delta.relation_changes.push_back({ia->first, ib->first, after});
        }
    }
    return delta;
}

// ---------------------------------------------------------------------------
// Repair and dynamic solve
// ---------------------------------------------------------------------------

/// Nogood for a violated constraint: the conflict variable — the
/// lexicographically last part in the constraint's scope — moves to the right
/// side with its current value forbidden; the other scope variables form the
/// left side.
inline Nogood create_nogood(const IdConstraint& violated, const IdAssignment& assignment)
{
    Nogood n;
    n.justification = violated.id;
    n.rhs_part = *std::max_element(violated.scope.begin(), violated.scope.end());
    n.rhs_forbidden = assignment.at(n.rhs_part);
    for (const std::string& part : violated.scope)
        if (part != n.rhs_part)
            n.lhs.emplace_back(part, assignment.at(part));
    std::sort(n.lhs.begin(), n.lhs.end());
    return n;
}

namespace detail {

inline bool repair_sol_impl(DynCspState& state, const std::string& part, std::size_t depth,
                            std::vector<std::string>& reassigned)
{
    const std::size_t max_depth = state.tmpl().parts.size();
    const std::vector<int> domain = state.domain();

    // Every base nogood puts only lexicographically smaller parts on its lhs,
    // and wipeout resolution preserves that, so the recursion below always
    // pivots to a strictly smaller part and the depth cap cannot cut off a
    // repairable chain.
    for (int guard = 0; guard < 100000; ++guard) {
        std::vector<const Nogood*> blockers;
        int candidate = -1;
        for (int value : domain) {
            const Nogood* b =
                state.nogoods().blocking(part, value, state.assignment(), state.active_constraints());
            if (!b) {
                candidate = value;
                break;
            }
            blockers.push_back(b);
        }
        if (candidate >= 0) {
            if (state.assignment()[part] != candidate) {
                state.assignment()[part] = candidate;
                state.reassignments_++;
                reassigned.push_back(part);
            }
            return true;
        }

        // Domain wipeout: resolve the blocking contexts into a new nogood on
        // the last lhs variable, then repair that variable.
        std::map<std::string, int> context;
        for (const Nogood* b : blockers)
            for (const auto& [p, v] : b->lhs)
                context[p] = v;
        if (context.empty())
            return false; // unconditionally wiped out
        const std::string pivot = context.rbegin()->first;

        Nogood derived;
        derived.derived = true;
        derived.rhs_part = pivot;
        derived.rhs_forbidden = state.assignment().at(pivot);
        for (const auto& [p, v] : context)
            if (p != pivot)
                derived.lhs.emplace_back(p, v);
        for (const Nogood* b : blockers)
            if (std::any_of(b->lhs.begin(), b->lhs.end(), [&](const auto& e) { return e.first == pivot; })) {
                derived.justification = b->justification;
                break;
            }
        state.nogoods().add(derived);

        if (depth + 1 > max_depth)
            return false;
        if (!repair_sol_impl(state, pivot, depth + 1, reassigned))
            return false;
    }
    throw std::logic_error("repair_sol: loop guard exceeded");
}

} // namespace detail

/// Find a new value for a conflicting part: the first domain value not
/// forbidden by any live nogood under the current assignment, recursively
/// repairing a blocking nogood's last lhs variable when the domain is
/// exhausted. Returns false when no repair exists.
inline bool repair_sol(DynCspState& state, const std::string& part)
{
    std::vector<std::string> reassigned;
    return detail::repair_sol_impl(state, part, 0, reassigned);
}

/// Incremental re-solve after a snapshot delta. Starts from the previous
/// complete assignment, re-verifies each pending constraint, records a nogood
/// and repairs on each violation, and succeeds once the pending set is empty.
inline std::optional<IdAssignment> dyn_solve(DynCspState& state, const SnapshotDelta& delta)
{
    // Apply the delta to the domains, then drop every nogood whose recorded
    // values mention a touched region (their supporting facts changed) and
    // every derived nogood (its support may have).
    std::set<int> touched;
    for (int id : delta.removed) {
        state.regions().erase(id);
        touched.insert(id);
    }
    for (const Region& r : delta.added) {
        state.regions().insert_or_assign(r.id(), r);
        touched.insert(r.id());
    }
    for (const Region& r : delta.changed) {
        state.regions().insert_or_assign(r.id(), r);
        touched.insert(r.id());
    }
    if (!touched.empty())
        state.nogoods().purge_if([&](const Nogood& n) {
            if (n.derived)
                return true;
            for (int id : touched)
                if (n.mentions_region(id))
                    return true;
            return false;
        });

    state.reassignments_ = 0;
    state.pending_ = state.active_constraints();
    state.verified_.clear();

    for (int guard = 0; guard < 10000000; ++guard) {
        if (state.pending_.empty())
            return state.assignment();
        int cid = *state.pending_.begin();
        const IdConstraint& c = state.constraint(cid);
        if (eval_constraint(c, state.assignment(), state.regions())) {
            state.pending_.erase(cid);
            state.verified_.insert(cid);
            continue;
        }

        Nogood nogood = create_nogood(c, state.assignment());
        state.nogoods().add(nogood);
        std::vector<std::string> reassigned;
        if (!detail::repair_sol_impl(state, nogood.rhs_part, 0, reassigned))
            return std::nullopt;

        // A repaired variable can invalidate constraints that were already
        // verified; move them back to pending.
        std::set<std::string> moved(reassigned.begin(), reassigned.end());
        std::vector<int> back;
        for (int vid : state.verified_) {
            const IdConstraint& vc = state.constraint(vid);
            if (std::any_of(vc.scope.begin(), vc.scope.end(),
                            [&](const std::string& p) { return moved.contains(p); }))
                back.push_back(vid);
        }
        for (int vid : back) {
            state.verified_.erase(vid);
            state.pending_.insert(vid);
        }
    }
    throw std::logic_error("dyn_solve: loop guard exceeded");
}

} // namespace stgmine
