#include "blindrank/votes.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

#include "blindrank/errors.hpp"

namespace blindrank {

namespace {

// Splits one CSV line with double-quoted fields ("" escapes a quote);
// member names carry embedded commas in the public roll-call exports.
std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          cur.push_back('"');
          ++k;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

long parse_long(const std::string& s, const std::string& what) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError("malformed " + what + " value: '" + s + "'");
  }
  return v;
}

struct ColumnIndex {
  int congress = -1, chamber = -1, rollnumber = -1, icpsr = -1, name = -1,
      party_code = -1, cast_code = -1;
};

ColumnIndex locate_columns(const std::vector<std::string>& header,
                           const std::string& path) {
  ColumnIndex ix;
  for (int k = 0; k < static_cast<int>(header.size()); ++k) {
    const std::string& h = header[k];
    if (h == "congress") ix.congress = k;
    else if (h == "chamber") ix.chamber = k;
    else if (h == "rollnumber") ix.rollnumber = k;
    else if (h == "icpsr") ix.icpsr = k;
    else if (h == "name") ix.name = k;
    else if (h == "party_code") ix.party_code = k;
    else if (h == "cast_code") ix.cast_code = k;
  }
  for (const auto& [idx, label] :
       {std::pair{ix.congress, "congress"}, {ix.chamber, "chamber"},
        {ix.rollnumber, "rollnumber"}, {ix.icpsr, "icpsr"}, {ix.name, "name"},
        {ix.party_code, "party_code"}, {ix.cast_code, "cast_code"}}) {
    if (idx < 0) {
      throw DataError("roll-call CSV is missing required column '" +
                      std::string(label) + "': " + path);
    }
  }
  return ix;
}

}  // namespace

double vote_signal_from_cast_code(int cast_code) {
  if (cast_code >= 1 && cast_code <= 3) return 1.0;
  if (cast_code >= 4 && cast_code <= 6) return -1.0;
  return 0.0;
}

std::vector<std::string> validate_votes_schema(const std::string& csv_path) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw DataError("cannot open for reading: " + csv_path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty roll-call file: " + csv_path);
  const auto header = split_line(line);
  locate_columns(header, csv_path);
  return header;
}

VoteSignalBatch ingest_votes(const std::string& csv_path,
                             const VoteFilter& filter) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw DataError("cannot open for reading: " + csv_path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty roll-call file: " + csv_path);
  const ColumnIndex ix = locate_columns(split_line(line), csv_path);

  struct Row {
    long rollnumber;
    long icpsr;
    double signal;
  };
  std::vector<Row> rows;
  std::set<long> member_set;
  std::set<long> roll_set;
  std::map<long, std::string> member_names;

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_line(line);
    if (static_cast<int>(f.size()) <= std::max({ix.congress, ix.chamber,
                                                ix.rollnumber, ix.icpsr,
                                                ix.name, ix.party_code,
                                                ix.cast_code})) {
      throw DataError("short row in roll-call CSV: " + csv_path);
    }
    if (filter.congress &&
        parse_long(f[ix.congress], "congress") != *filter.congress) {
      continue;
    }
    if (filter.chamber && f[ix.chamber] != *filter.chamber) continue;
    if (filter.party_code &&
        parse_long(f[ix.party_code], "party_code") != *filter.party_code) {
      continue;
    }
    const long roll = parse_long(f[ix.rollnumber], "rollnumber");
    const long member = parse_long(f[ix.icpsr], "icpsr");
    const long cast = parse_long(f[ix.cast_code], "cast_code");
    rows.push_back({roll, member, vote_signal_from_cast_code(static_cast<int>(cast))});
    member_set.insert(member);
    roll_set.insert(roll);
    member_names[member] = f[ix.name];
  }

  if (member_set.empty()) {
    throw DataError("no members left after filtering: " + csv_path);
  }

  VoteSignalBatch batch;
  batch.member_ids.assign(member_set.begin(), member_set.end());
  std::vector<long> rolls(roll_set.begin(), roll_set.end());
  std::map<long, int> member_col, roll_row;
  for (int c = 0; c < static_cast<int>(batch.member_ids.size()); ++c) {
    member_col[batch.member_ids[c]] = c;
    batch.node_labels.push_back(member_names[batch.member_ids[c]]);
  }
  for (int r = 0; r < static_cast<int>(rolls.size()); ++r) {
    roll_row[rolls[r]] = r;
    batch.rollcall_ids.push_back(std::to_string(rolls[r]));
  }
  batch.samples = Eigen::MatrixXd::Zero(static_cast<int>(rolls.size()),
                                        static_cast<int>(batch.member_ids.size()));
  for (const Row& row : rows) {
    batch.samples(roll_row[row.rollnumber], member_col[row.icpsr]) = row.signal;
  }
  return batch;
}

std::map<long, std::pair<double, double>> read_coordinates_csv(
    const std::string& csv_path) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw DataError("cannot open for reading: " + csv_path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty coordinates file: " + csv_path);
  const auto header = split_line(line);
  int icpsr = -1, d1 = -1, d2 = -1;
  for (int k = 0; k < static_cast<int>(header.size()); ++k) {
    if (header[k] == "icpsr") icpsr = k;
    else if (header[k] == "dim1") d1 = k;
    else if (header[k] == "dim2") d2 = k;
  }
  if (icpsr < 0 || d1 < 0 || d2 < 0) {
    throw DataError("coordinates CSV needs columns icpsr, dim1, dim2: " + csv_path);
  }
  std::map<long, std::pair<double, double>> coords;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_line(line);
    if (static_cast<int>(f.size()) <= std::max({icpsr, d1, d2})) {
      throw DataError("short row in coordinates CSV: " + csv_path);
    }
    double a = 0.0, b = 0.0;
    auto parse = [&csv_path](const std::string& s) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw DataError("malformed coordinate '" + s + "' in " + csv_path);
      }
      return v;
    };
    a = parse(f[d1]);
    b = parse(f[d2]);
    coords[parse_long(f[icpsr], "icpsr")] = {a, b};
  }
  return coords;
}

}  // namespace blindrank
