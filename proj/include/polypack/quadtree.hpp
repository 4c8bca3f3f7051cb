#pragma once

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "polypack/geom.hpp"

namespace polypack {

// Loose quad tree over bounding boxes. An entry lives in the deepest node
// whose region contains it; boxes that straddle a split line stay in the
// parent. Shared by the verifier (broad phase) and the solver (occupancy).
class QuadTree {
public:
    static constexpr std::size_t kLeafCapacity = 16;
    static constexpr int kMaxDepth = 20;

    struct Entry {
        std::size_t id = 0;
        Box box;
    };

    explicit QuadTree(Box region);

    void insert(std::size_t id, const Box& box);
    // Returns false when (id, box) is not stored.
    bool remove(std::size_t id, const Box& box);

    // Ids whose boxes have interiors meeting the query interior.
    void query(const Box& box, std::vector<std::size_t>& out) const;
    bool any_overlap(const Box& box, std::size_t ignore = static_cast<std::size_t>(-1)) const;

    // All stored pairs (a < b) whose box interiors meet, sorted.
    std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs() const;

    std::size_t size() const { return size_; }
    const Box& region() const { return root_->region; }

private:
    struct Node {
        Box region;
        int depth = 0;
        std::vector<Entry> entries;
        std::unique_ptr<Node> child[4];

        bool leaf() const { return !child[0]; }
    };

    static int child_slot(const Node& node, const Box& box);
    void split(Node& node);
    void insert_at(Node& node, const Entry& e);

    std::unique_ptr<Node> root_;
    std::size_t size_ = 0;
};

}  // namespace polypack
