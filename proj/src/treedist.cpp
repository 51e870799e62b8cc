#include "gx/treedist.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace gx {

namespace {

// Postorder flattening with leftmost-leaf indices, as the Zhang-Shasha
// algorithm requires.
struct FlatTree {
    std::vector<std::string> labels;  // postorder
    std::vector<int> lml;             // leftmost leaf of node i (postorder index)
    std::vector<int> keyroots;        // ascending

    explicit FlatTree(const RuleTree& root) {
        walk(root);
        std::vector<char> isKeyroot(labels.size(), 1);
        // A node is a keyroot iff no proper ancestor shares its leftmost leaf;
        // equivalently, the last node seen for each distinct lml value.
        std::vector<int> lastForLml(labels.size(), -1);
        for (int i = 0; i < static_cast<int>(labels.size()); ++i) lastForLml[lml[i]] = i;
        for (int i = 0; i < static_cast<int>(labels.size()); ++i)
            if (lastForLml[lml[i]] == i) keyroots.push_back(i);
    }

private:
    int walk(const RuleTree& node) {
        int firstLeaf = -1;
        for (const RuleTree& child : node.children) {
            int childLml = walk(child);
            if (firstLeaf < 0) firstLeaf = childLml;
        }
        int myIndex = static_cast<int>(labels.size());
        labels.push_back(node.label);
        lml.push_back(firstLeaf < 0 ? myIndex : firstLeaf);
        return lml.back();
    }
};

}  // namespace

int zhang_shasha_distance(const RuleTree& a, const RuleTree& b) {
    FlatTree ta(a), tb(b);
    const int n = static_cast<int>(ta.labels.size());
    const int m = static_cast<int>(tb.labels.size());
    std::vector<std::vector<int>> treedist(n, std::vector<int>(m, 0));

    // forest distance buffer, indexed [i - ioff + 1][j - joff + 1]
    std::vector<std::vector<int>> fd(static_cast<size_t>(n) + 1,
                                     std::vector<int>(static_cast<size_t>(m) + 1, 0));

    for (int k1 : ta.keyroots) {
        for (int k2 : tb.keyroots) {
            const int ioff = ta.lml[k1];
            const int joff = tb.lml[k2];
            const int rows = k1 - ioff + 1;
            const int cols = k2 - joff + 1;
            fd[0][0] = 0;
            for (int i = 1; i <= rows; ++i) fd[i][0] = fd[i - 1][0] + 1;  // delete
            for (int j = 1; j <= cols; ++j) fd[0][j] = fd[0][j - 1] + 1;  // insert
            for (int i = 1; i <= rows; ++i) {
                const int ni = ioff + i - 1;  // node index in a
                for (int j = 1; j <= cols; ++j) {
                    const int nj = joff + j - 1;
                    if (ta.lml[ni] == ioff && tb.lml[nj] == joff) {
                        int rename = (ta.labels[ni] == tb.labels[nj]) ? 0 : 1;
                        fd[i][j] = std::min({fd[i - 1][j] + 1, fd[i][j - 1] + 1,
                                             fd[i - 1][j - 1] + rename});
                        treedist[ni][nj] = fd[i][j];
                    } else {
                        const int pi = ta.lml[ni] - ioff;  // forest prefix before subtree(ni)
                        const int pj = tb.lml[nj] - joff;
                        fd[i][j] = std::min({fd[i - 1][j] + 1, fd[i][j - 1] + 1,
                                             fd[pi][pj] + treedist[ni][nj]});
                    }
                }
            }
        }
    }
    return treedist[n - 1][m - 1];
}

}  // namespace gx
