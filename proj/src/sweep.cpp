#include "permforge/sweep.hpp"

#include <sstream>

namespace permforge {

namespace {

// OEIS A000712, first 21 terms.
const ReferenceSequence kA000712 = {
    "A000712",
    {1,    2,    5,    10,   20,   36,   65,   110,  185,  300,  481,
     752,  1165, 1770, 2665, 3956, 5822, 8470, 12230, 17490, 24842},
};

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::uint64_t parse_count(const std::string& field, const std::string& where) {
    if (field.empty()) throw SyntaxError(where + ": empty cell");
    std::uint64_t value = 0;
    for (char ch : field) {
        if (ch < '0' || ch > '9') throw SyntaxError(where + ": not a count: \"" + field + "\"");
        value = value * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    return value;
}

} // namespace

SweepResult run_sweep(const SweepSpec& spec, int workers, int split_depth) {
    if (spec.n_min < 1 || spec.n_min > spec.n_max) {
        throw ValidationError("length range is empty or starts below 1");
    }
    if (spec.k_min < 0 || spec.k_min > spec.k_max) {
        throw ValidationError("inversion range is empty or starts below 0");
    }

    SweepResult result;
    result.spec = spec;
    const size_t width = static_cast<size_t>(spec.k_max - spec.k_min) + 1;

    for (int n = spec.n_min; n <= spec.n_max; ++n) {
        std::vector<std::uint64_t> row(width, 0);

        Model m;
        m.length = n;
        m.constraints.push_back(PatternConstraint{PatternSpec::classic(spec.avoided), Mode::avoid});
        m.constraints.push_back(StatisticConstraint{
            {{{1, StatisticKind::inversions}}, Comparator::le, spec.k_max, std::nullopt}});
        m.emit = {StatisticKind::inversions};

        SolveConfig cfg;
        cfg.workers = workers;
        cfg.split_depth = split_depth;
        solve_stream(m, cfg, [&](const Solution& s) {
            const std::uint64_t inv = s.stats[0];
            if (inv >= static_cast<std::uint64_t>(spec.k_min) &&
                inv <= static_cast<std::uint64_t>(spec.k_max)) {
                ++row[static_cast<size_t>(inv) - static_cast<size_t>(spec.k_min)];
            }
            return true;
        });

        result.counts.push_back(std::move(row));
    }
    return result;
}

std::string sweep_to_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "n";
    for (int k = result.spec.k_min; k <= result.spec.k_max; ++k) out << ',' << k;
    out << '\n';
    for (int n = result.spec.n_min; n <= result.spec.n_max; ++n) {
        out << n;
        const auto& row = result.counts[static_cast<size_t>(n - result.spec.n_min)];
        for (const std::uint64_t cell : row) out << ',' << cell;
        out << '\n';
    }
    for (int k = result.spec.k_min; k <= result.spec.k_max; ++k) {
        const int n = k + 2;
        if (n < result.spec.n_min || n > result.spec.n_max) continue;
        const std::uint64_t cell =
            result.counts[static_cast<size_t>(n - result.spec.n_min)]
                         [static_cast<size_t>(k - result.spec.k_min)];
        out << "# stabilized k=" << k << " at n=" << n << ": " << cell << '\n';
    }
    return out.str();
}

std::optional<std::uint64_t> SweepGrid::cell(int n, int k) const {
    for (size_t row = 0; row < ns.size(); ++row) {
        if (ns[row] != n) continue;
        for (size_t col = 0; col < ks.size(); ++col) {
            if (ks[col] == k) return cells[row][col];
        }
    }
    return std::nullopt;
}

SweepGrid parse_sweep_csv(const std::string& text) {
    SweepGrid grid;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const std::string where = "line " + std::to_string(lineno);
        auto fields = split_fields(line);
        if (!header_seen) {
            if (fields.size() < 2 || fields[0] != "n") {
                throw SyntaxError(where + ": expected header \"n,<k values>\"");
            }
            for (size_t i = 1; i < fields.size(); ++i) {
                grid.ks.push_back(static_cast<int>(parse_count(fields[i], where)));
            }
            header_seen = true;
            continue;
        }
        if (fields.size() != grid.ks.size() + 1) {
            throw SyntaxError(where + ": expected " + std::to_string(grid.ks.size() + 1) + " fields");
        }
        grid.ns.push_back(static_cast<int>(parse_count(fields[0], where)));
        std::vector<std::uint64_t> row;
        row.reserve(grid.ks.size());
        for (size_t i = 1; i < fields.size(); ++i) row.push_back(parse_count(fields[i], where));
        grid.cells.push_back(std::move(row));
    }
    if (!header_seen || grid.ns.empty()) {
        throw SyntaxError("sweep CSV contains no data rows");
    }
    return grid;
}

const ReferenceSequence& reference_sequence(const std::string& name) {
    if (name == kA000712.name) return kA000712;
    throw ValidationError("unknown reference sequence \"" + name + "\"");
}

std::vector<StabilizationCheck> compare_stabilized(const SweepGrid& grid,
                                                   const ReferenceSequence& ref) {
    std::vector<StabilizationCheck> checks;
    for (size_t col = 0; col < grid.ks.size(); ++col) {
        const int k = grid.ks[col];
        const auto stabilized = grid.cell(k + 2, k);
        if (!stabilized) continue;
        StabilizationCheck check;
        check.k = k;
        check.stabilized = *stabilized;
        check.constant_below = true;
        for (size_t row = 0; row < grid.ns.size(); ++row) {
            if (grid.ns[row] > k + 2 && grid.cells[row][col] != *stabilized) {
                check.constant_below = false;
            }
        }
        if (k >= 0 && static_cast<size_t>(k) < ref.terms.size()) {
            check.reference = ref.terms[static_cast<size_t>(k)];
        }
        check.match = check.constant_below && check.reference && *check.reference == check.stabilized;
        checks.push_back(check);
    }
    return checks;
}

} // namespace permforge
