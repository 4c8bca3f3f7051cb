#include "polypack/quadtree.hpp"

#include <algorithm>

namespace polypack {

QuadTree::QuadTree(Box region) : root_(std::make_unique<Node>()) { root_->region = region; }

int QuadTree::child_slot(const Node& node, const Box& box) {
    const Box& r = node.region;
    Coord mx = r.min_x + (r.max_x - r.min_x) / 2;
    Coord my = r.min_y + (r.max_y - r.min_y) / 2;
    int col, row;
    if (box.max_x <= mx && box.min_x >= r.min_x) col = 0;
    else if (box.min_x >= mx && box.max_x <= r.max_x) col = 1;
    else return -1;
    if (box.max_y <= my && box.min_y >= r.min_y) row = 0;
    else if (box.min_y >= my && box.max_y <= r.max_y) row = 1;
    else return -1;
    return row * 2 + col;
}

void QuadTree::split(Node& node) {
    const Box& r = node.region;
    Coord mx = r.min_x + (r.max_x - r.min_x) / 2;
    Coord my = r.min_y + (r.max_y - r.min_y) / 2;
    Box quads[4] = {{r.min_x, r.min_y, mx, my}, {mx, r.min_y, r.max_x, my}, {r.min_x, my, mx, r.max_y}, {mx, my, r.max_x, r.max_y}};
    for (int k = 0; k < 4; ++k) {
        node.child[k] = std::make_unique<Node>();
        node.child[k]->region = quads[k];
        node.child[k]->depth = node.depth + 1;
    }
    std::vector<Entry> keep;
    for (const Entry& e : node.entries) {
        int slot = child_slot(node, e.box);
        if (slot < 0) keep.push_back(e);
        else node.child[slot]->entries.push_back(e);
    }
    node.entries = std::move(keep);
}

void QuadTree::insert_at(Node& node, const Entry& e) {
    Node* at = &node;
    while (true) {
        if (at->leaf()) {
            at->entries.push_back(e);
            if (at->entries.size() > kLeafCapacity && at->depth < kMaxDepth && at->region.width() >= 2 &&
                at->region.height() >= 2) {
                split(*at);
            }
            return;
        }
        int slot = child_slot(*at, e.box);
        if (slot < 0) {
            at->entries.push_back(e);
            return;
        }
        at = at->child[slot].get();
    }
}

void QuadTree::insert(std::size_t id, const Box& box) {
    insert_at(*root_, {id, box});
    ++size_;
}

bool QuadTree::remove(std::size_t id, const Box& box) {
    Node* at = root_.get();
    while (at) {
        auto it = std::find_if(at->entries.begin(), at->entries.end(),
                               [&](const Entry& e) { return e.id == id && e.box == box; });
        if (it != at->entries.end()) {
            at->entries.erase(it);
            --size_;
            return true;
        }
        if (at->leaf()) return false;
        int slot = child_slot(*at, box);
        if (slot < 0) return false;
        at = at->child[slot].get();
    }
    return false;
}

void QuadTree::query(const Box& box, std::vector<std::size_t>& out) const {
    std::vector<const Node*> stack{root_.get()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        for (const Entry& e : n->entries)
            if (interiors_intersect(e.box, box)) out.push_back(e.id);
        if (n->leaf()) continue;
        // A child's entries lie inside its region.
        for (const auto& c : n->child)
            if (closed_intersect(c->region, box)) stack.push_back(c.get());
    }
}

bool QuadTree::any_overlap(const Box& box, std::size_t ignore) const {
    std::vector<const Node*> stack{root_.get()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        for (const Entry& e : n->entries)
            if (e.id != ignore && interiors_intersect(e.box, box)) return true;
        if (n->leaf()) continue;
        for (const auto& c : n->child)
            if (closed_intersect(c->region, box)) stack.push_back(c.get());
    }
    return false;
}

std::vector<std::pair<std::size_t, std::size_t>> QuadTree::candidate_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    // Walk the tree keeping the entries of every ancestor; an entry can only
    // meet entries in its own node, its ancestors, or its descendants.
    struct Frame {
        const Node* node;
        std::size_t ancestors;  // size of the ancestor stack for this node
    };
    std::vector<const Entry*> above;
    std::vector<Frame> stack{{root_.get(), 0}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        above.resize(f.ancestors);
        const auto& es = f.node->entries;
        for (std::size_t i = 0; i < es.size(); ++i) {
            for (const Entry* a : above)
                if (interiors_intersect(a->box, es[i].box)) out.emplace_back(std::min(a->id, es[i].id), std::max(a->id, es[i].id));
            for (std::size_t j = i + 1; j < es.size(); ++j)
                if (interiors_intersect(es[i].box, es[j].box))
                    out.emplace_back(std::min(es[i].id, es[j].id), std::max(es[i].id, es[j].id));
        }
        if (f.node->leaf()) continue;
        for (const Entry& e : es) above.push_back(&e);
        for (int k = 3; k >= 0; --k) stack.push_back({f.node->child[k].get(), above.size()});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace polypack
