#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace blindrank {

/// Roll-call votes as graph signals: rows are roll-calls, columns are
/// members, entries in {-1, 0, +1}.
struct VoteSignalBatch {
  Eigen::MatrixXd samples;               // m x n
  std::vector<std::string> node_labels;  // member names, one per column
  std::vector<long> member_ids;          // icpsr ids, ascending
  std::vector<std::string> rollcall_ids; // roll numbers, ascending
};

struct VoteFilter {
  std::optional<int> congress;
  std::optional<std::string> chamber;
  std::optional<int> party_code;
};

/// Maps a roll-call cast code onto a signal value: {1,2,3} -> +1 (yea,
/// paired yea, announced yea), {4,5,6} -> -1 (the nay equivalents),
/// anything else -> 0. The numeric codes follow the public roll-call data
/// dictionary.
double vote_signal_from_cast_code(int cast_code);

/// Reads a roll-call CSV with columns congress, chamber, rollnumber,
/// icpsr, name, party_code, cast_code (located by header name, any
/// order). Members absent from a roll-call get 0. Throws DataError on a
/// missing column or when no member survives the filters.
VoteSignalBatch ingest_votes(const std::string& csv_path,
                             const VoteFilter& filter);

/// Validates the header of a roll-call CSV without ingesting it; returns
/// the recognized column names in file order.
std::vector<std::string> validate_votes_schema(const std::string& csv_path);

/// Two ideological coordinates per member id, read from a CSV with
/// columns icpsr, dim1, dim2 (extra columns ignored).
std::map<long, std::pair<double, double>> read_coordinates_csv(
    const std::string& csv_path);

}  // namespace blindrank
