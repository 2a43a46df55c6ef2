#include "simgen/pipelines/ingest.hpp"

#include <cstdio>
#include <fstream>

#include "simgen/util/format.hpp"

namespace simgen::pipelines {

namespace {

// days since 1970-01-01 (Howard Hinnant's civil-days algorithm)
long days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    long era = (y >= 0 ? y : y - 399) / 400;
    unsigned yoe = static_cast<unsigned>(y - era * 400);
    unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

long parse_iso_date(const std::string& s, std::size_t line_no) {
    int y;
    unsigned m, d;
    char trail;
    if (std::sscanf(s.c_str(), "%d-%u-%u%c", &y, &m, &d, &trail) != 3 || m < 1 || m > 12 ||
        d < 1 || d > 31)
        throw ParseError("line " + std::to_string(line_no) + ": invalid ISO-8601 date \"" + s +
                         "\"");
    return days_from_civil(y, m, d);
}

}  // namespace

RealSeries ingest_real_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open " + path.string());

    RealSeries out;
    std::string line;
    std::size_t line_no = 0;
    long prev_day = 0;
    bool have_prev = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected date,value");
        std::string date = line.substr(0, comma);
        std::string value = line.substr(comma + 1);
        if (line_no == 1 && date == "date") continue;  // header row

        long day = parse_iso_date(date, line_no);
        if (have_prev && day != prev_day + 1)
            throw NonContiguousDates("line " + std::to_string(line_no) + ": date " + date +
                                     " does not follow the previous day");
        double v;
        try {
            v = util::parse_double(value);
        } catch (const std::invalid_argument&) {
            throw ParseError("line " + std::to_string(line_no) + ": invalid value \"" + value +
                             "\"");
        }
        if (v < 0.0)
            throw NegativeCaseCount("line " + std::to_string(line_no) +
                                    ": negative case count " + value);
        if (!have_prev) out.first_date = date;
        out.values.push_back(v);
        prev_day = day;
        have_prev = true;
    }
    if (out.values.empty()) throw ParseError(path.string() + ": no data rows");
    return out;
}

}  // namespace simgen::pipelines
