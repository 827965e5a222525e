#include <lowss/instance.hpp>

#include <cctype>
#include <sstream>

namespace lowss {

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line = 1;
    std::size_t col = 1;

    bool eof() const { return pos >= text.size(); }

    void advance() {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(text[pos])))
            advance();
    }

    // Signed sign detection only for diagnostics; values must be positive.
    u64 read_positive(const char* what, bool allowZero = false) {
        skip_ws();
        const std::size_t tokLine = line, tokCol = col;
        if (eof()) throw ParseError(std::string("missing ") + what, tokLine, tokCol);
        bool negative = false;
        if (text[pos] == '-') {
            negative = true;
            advance();
        }
        if (eof() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            throw ParseError(std::string("malformed token for ") + what, tokLine, tokCol);
        u64 v = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            const u64 digit = static_cast<u64>(text[pos] - '0');
            if (v > (UINT64_MAX - digit) / 10)
                throw ParseError(std::string("value out of 64-bit range for ") + what,
                                 tokLine, tokCol);
            v = v * 10 + digit;
            advance();
        }
        if (!eof() && !std::isspace(static_cast<unsigned char>(text[pos])))
            throw ParseError(std::string("malformed token for ") + what, tokLine, tokCol);
        if (negative || (!allowZero && v == 0))
            throw ParseError(std::string("nonpositive value for ") + what, tokLine, tokCol);
        return v;
    }
};

} // namespace

SubsetSumInstance parse_instance(std::string_view text) {
    Cursor cur{text};
    SubsetSumInstance inst;
    const u64 n = cur.read_positive("item count n", /*allowZero=*/true);
    inst.target = cur.read_positive("target t");
    inst.items.reserve(static_cast<std::size_t>(n));
    for (u64 i = 0; i < n; ++i) inst.items.push_back(cur.read_positive("item"));
    cur.skip_ws();
    if (!cur.eof())
        throw ParseError("trailing input after declared n items", cur.line, cur.col);
    return inst;
}

std::string format_instance(const SubsetSumInstance& inst) {
    std::ostringstream os;
    os << inst.items.size() << ' ' << inst.target << '\n';
    for (std::size_t i = 0; i < inst.items.size(); ++i) {
        if (i) os << ' ';
        os << inst.items[i];
    }
    os << '\n';
    return os.str();
}

SubsetSumInstance normalized(const SubsetSumInstance& inst) {
    SubsetSumInstance out;
    out.target = inst.target;
    out.items.reserve(inst.items.size());
    for (u64 a : inst.items)
        if (a <= inst.target) out.items.push_back(a);
    return out;
}

std::string outcome_csv_row(const std::string& algo, const SubsetSumInstance& inst,
                            const SolveOutcome& out) {
    std::ostringstream os;
    os << algo << ',' << inst.items.size() << ',' << inst.target << ','
       << to_string(out.answer) << ',' << out.randomBitsUsed << ','
       << out.meter.peak_words() << ',' << out.wallTime.count();
    return os.str();
}

} // namespace lowss
