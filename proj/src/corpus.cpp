#include "revccs/corpus.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace revccs {

namespace {

using Family = std::vector<std::vector<CcsProcess>>;  // by exact prefix count

// Multisets of prefixed summands whose sizes add up to n, largest first.
void sums(const Family &prefixed, std::size_t n, std::size_t max_size, std::size_t max_index,
          std::vector<std::pair<ActionLabel, CcsProcess>> &acc, std::set<CcsProcess> &out) {
    if (n == 0) {
        if (!acc.empty()) out.insert(normal_form(CcsProcess::sum(acc)));
        return;
    }
    for (std::size_t size = std::min(n, max_size); size >= 1; --size) {
        const auto &pool = prefixed[size];
        std::size_t limit = size == max_size ? max_index : pool.size();
        for (std::size_t k = 0; k < limit; ++k) {
            acc.emplace_back(pool[k].summand_label(0), pool[k].summand_continuation(0));
            sums(prefixed, n - size, size, k + 1, acc, out);
            acc.pop_back();
        }
    }
}

}  // namespace

std::vector<CcsProcess> generate_corpus(const CorpusOptions &options) {
    std::size_t n = options.max_prefixes;
    std::vector<ActionLabel> actions;
    for (const auto &a : options.actions) actions.push_back(parse_action_label(a));
    Family seq(n + 1), prefixed(n + 1);
    seq[0] = {CcsProcess::nil()};
    for (std::size_t k = 1; k <= n; ++k) {
        std::set<CcsProcess> pre;
        for (const auto &a : actions)
            for (const auto &s : seq[k - 1]) pre.insert(normal_form(CcsProcess::prefix(a, s)));
        prefixed[k].assign(pre.begin(), pre.end());
        std::set<CcsProcess> all;
        std::vector<std::pair<ActionLabel, CcsProcess>> acc;
        sums(prefixed, k, k, prefixed[k].size(), acc, all);
        seq[k].assign(all.begin(), all.end());
    }
    std::set<CcsProcess> corpus;
    for (std::size_t k = 0; k <= n; ++k) corpus.insert(seq[k].begin(), seq[k].end());
    // parallel compositions of nonempty sequential components
    std::function<void(std::size_t, std::size_t, std::size_t, std::vector<CcsProcess> &)> par =
        [&](std::size_t budget, std::size_t min_size, std::size_t min_index,
            std::vector<CcsProcess> &comps) {
            if (comps.size() >= 2) {
                CcsProcess p = comps.back();
                for (std::size_t k = comps.size() - 1; k-- > 0;) p = CcsProcess::par(comps[k], p);
                corpus.insert(normal_form(p));
            }
            if (comps.size() == options.max_components) return;
            for (std::size_t size = min_size; size <= budget; ++size)
                for (std::size_t k = size == min_size ? min_index : 0; k < seq[size].size(); ++k) {
                    comps.push_back(seq[size][k]);
                    par(budget - size, size, k, comps);
                    comps.pop_back();
                }
        };
    std::vector<CcsProcess> comps;
    if (options.max_components >= 2) par(n, 1, 0, comps);
    return {corpus.begin(), corpus.end()};
}

}  // namespace revccs
