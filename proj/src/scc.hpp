#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace xpl::detail {

// Iterative Tarjan. Components come out sinks first, i.e. every component is
// listed after all components it can reach.
inline std::vector<std::vector<std::size_t>> strongly_connected(const std::vector<std::vector<std::size_t>>& succ) {
    const std::size_t n = succ.size();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> out;
    std::size_t counter = 0;

    struct Frame {
        std::size_t v;
        std::size_t next;
    };
    std::vector<Frame> call;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next < succ[f.v].size()) {
                std::size_t w = succ[f.v][f.next++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            std::size_t v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                auto& comp = out.emplace_back();
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                std::reverse(comp.begin(), comp.end());
            }
        }
    }
    return out;
}

}  // namespace xpl::detail
