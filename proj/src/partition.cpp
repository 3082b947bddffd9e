#include "ualg/partition.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ualg/errors.hpp"
#include "ualg/union_find.hpp"

namespace ualg {

namespace {

std::vector<int> canonicalize(const std::vector<int>& raw) {
    std::vector<int> relabel(raw.size(), -1);
    std::vector<int> out(raw.size());
    int next = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        int b = raw[i];
        if (b < 0 || b >= static_cast<int>(raw.size()))
            fail(ErrorCode::InvalidArgument, "block id out of range in partition");
        if (relabel[b] < 0) relabel[b] = next++;
        out[i] = relabel[b];
    }
    return out;
}

}  // namespace

Partition::Partition(std::vector<int> block_of) : block_of_(canonicalize(block_of)) {}

Partition Partition::identity(int n) {
    std::vector<int> b(n);
    for (int i = 0; i < n; ++i) b[i] = i;
    Partition p;
    p.block_of_ = std::move(b);
    return p;
}

Partition Partition::total(int n) {
    Partition p;
    p.block_of_.assign(n, 0);
    return p;
}

Partition Partition::from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    UnionFind uf(n);
    for (auto [a, b] : pairs) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            fail(ErrorCode::InvalidArgument, "pair element out of range");
        uf.unite(a, b);
    }
    return Partition(uf.roots());
}

int Partition::num_blocks() const {
    int m = -1;
    for (int b : block_of_) m = std::max(m, b);
    return m + 1;
}

bool Partition::is_identity() const {
    for (std::size_t i = 0; i < block_of_.size(); ++i)
        if (block_of_[i] != static_cast<int>(i)) return false;
    return true;
}

bool Partition::is_total() const {
    for (int b : block_of_)
        if (b != 0) return false;
    return !block_of_.empty();
}

bool Partition::refines(const Partition& other) const {
    if (size() != other.size()) fail(ErrorCode::SizeMismatch, "partition sizes differ");
    // First element of each block determines the other-side block it must stay in.
    std::vector<int> rep(size(), -1);
    for (int i = 0; i < size(); ++i) {
        int b = block_of_[i];
        if (rep[b] < 0) rep[b] = i;
        if (other.block_of_[i] != other.block_of_[rep[b]]) return false;
    }
    return true;
}

std::vector<std::vector<int>> Partition::blocks() const {
    std::vector<std::vector<int>> out(num_blocks());
    for (int i = 0; i < size(); ++i) out[block_of_[i]].push_back(i);
    return out;
}

std::string Partition::to_text() const {
    std::string out;
    for (const auto& blk : blocks()) {
        if (!out.empty()) out += '|';
        for (std::size_t i = 0; i < blk.size(); ++i) {
            if (i > 0) out += ' ';
            out += std::to_string(blk[i]);
        }
    }
    return out;
}

Partition Partition::parse_text(const std::string& text, int n) {
    std::vector<int> block_of(n, -1);
    int block = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t bar = text.find('|', pos);
        std::string chunk = text.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos);
        std::istringstream in(chunk);
        int e = 0;
        bool any = false;
        while (in >> e) {
            any = true;
            if (e < 0 || e >= n)
                fail(ErrorCode::InvalidArgument,
                     "partition element " + std::to_string(e) + " out of range [0," + std::to_string(n) + ")");
            if (block_of[e] != -1)
                fail(ErrorCode::InvalidArgument, "element " + std::to_string(e) + " listed twice");
            block_of[e] = block;
        }
        if (!in.eof())
            fail(ErrorCode::InvalidArgument, "invalid partition text: " + text);
        if (!any && !(chunk.empty() && n == 0))
            fail(ErrorCode::InvalidArgument, "empty block in partition text: " + text);
        ++block;
        if (bar == std::string::npos) break;
        pos = bar + 1;
    }
    for (int i = 0; i < n; ++i)
        if (block_of[i] == -1)
            fail(ErrorCode::InvalidArgument, "element " + std::to_string(i) + " missing from partition text");
    return Partition(block_of);
}

Partition meet(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) fail(ErrorCode::SizeMismatch, "partition sizes differ");
    std::map<std::pair<int, int>, int> ids;
    std::vector<int> out(a.size());
    for (int i = 0; i < a.size(); ++i) {
        auto key = std::make_pair(a.block(i), b.block(i));
        auto [it, fresh] = ids.emplace(key, static_cast<int>(ids.size()));
        (void)fresh;
        out[i] = it->second;
    }
    return Partition(out);
}

Partition join(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) fail(ErrorCode::SizeMismatch, "partition sizes differ");
    UnionFind uf(a.size());
    std::vector<int> first_a(a.size(), -1), first_b(b.size(), -1);
    for (int i = 0; i < a.size(); ++i) {
        int& fa = first_a[a.block(i)];
        if (fa < 0) fa = i; else uf.unite(fa, i);
        int& fb = first_b[b.block(i)];
        if (fb < 0) fb = i; else uf.unite(fb, i);
    }
    return Partition(uf.roots());
}

Partition restrict_to(const Partition& theta, const std::vector<int>& elems) {
    std::vector<int> raw(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
        int e = elems[i];
        if (e < 0 || e >= theta.size()) fail(ErrorCode::InvalidArgument, "restriction element out of range");
        raw[i] = theta.block(e);
    }
    // Raw labels are parent block ids; remap them below the subset size first.
    std::map<int, int> remap;
    for (int& r : raw) {
        auto [it, fresh] = remap.emplace(r, static_cast<int>(remap.size()));
        (void)fresh;
        r = it->second;
    }
    return Partition(raw);
}

bool compose_equals(const Partition& a, const Partition& b, const Partition& c) {
    if (a.size() != b.size() || a.size() != c.size())
        fail(ErrorCode::SizeMismatch, "partition sizes differ");
    int n = a.size();
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            bool in_comp = false;
            for (int w = 0; w < n && !in_comp; ++w)
                in_comp = a.same(u, w) && b.same(w, v);
            if (in_comp != c.same(u, v)) return false;
        }
    }
    return true;
}

}  // namespace ualg
