// Copyright 2026 The Pyramid Masker Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pyramid_masker/ingest.h"

#include <gtest/gtest.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <fstream>
#include <sstream>
#include <streambuf>

#include "synthetic.h"

namespace pyramid_masker {
namespace {

std::vector<LoadedRecord> ReadAll(const std::string& text) {
  std::istringstream in(text);
  ClusterReader reader(in, "test");
  std::vector<LoadedRecord> out;
  while (auto record = reader.Next()) out.push_back(std::move(*record));
  return out;
}

TEST(IngestTest, MinimalRecord) {
  const auto records =
      ReadAll(R"({"cluster_id":"c1","documents":["A.","B."]})" "\n");
  ASSERT_EQ(records.size(), 1u);
  ASSERT_TRUE(records[0].ok());
  EXPECT_EQ(records[0].cluster().cluster_id, "c1");
  EXPECT_EQ(records[0].cluster().documents.size(), 2u);
  EXPECT_FALSE(records[0].cluster().gold_summary.has_value());
}

TEST(IngestTest, EmptyFileIsEmptySequence) {
  EXPECT_TRUE(ReadAll("").empty());
  EXPECT_TRUE(ReadAll("\n  \n\r\n").empty());
}

TEST(IngestTest, EmptyDocumentsIsRecordError) {
  const auto records = ReadAll(
      "{\"cluster_id\":\"a\",\"documents\":[\"x.\"]}\n"
      "{\"cluster_id\":\"b\",\"documents\":[]}\n"
      "{\"cluster_id\":\"c\",\"documents\":[\"y.\"]}\n");
  ASSERT_EQ(records.size(), 3u);
  EXPECT_TRUE(records[0].ok());
  ASSERT_FALSE(records[1].ok());
  EXPECT_EQ(records[1].line, 2u);
  EXPECT_EQ(records[1].error().message, "empty cluster");
  EXPECT_EQ(records[1].error().cluster_id, "b");
  EXPECT_TRUE(records[2].ok());
}

TEST(IngestTest, RecordLevelErrors) {
  const auto records = ReadAll(
      "not json\n"
      "[1,2]\n"
      "{\"documents\":[\"x.\"]}\n"
      "{\"cluster_id\":\"\",\"documents\":[\"x.\"]}\n"
      "{\"cluster_id\":\"d\",\"documents\":[\"x.\", \"  \"]}\n"
      "{\"cluster_id\":\"e\",\"documents\":[\"x.\"],"
      "\"entities\":[{\"surface\":\"X\",\"doc\":3}]}\n"
      "{\"cluster_id\":\"f\",\"documents\":[\"x.\"]}\n"
      "{\"cluster_id\":\"f\",\"documents\":[\"y.\"]}\n");
  ASSERT_EQ(records.size(), 8u);
  for (size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i].line, i + 1);
    EXPECT_EQ(records[i].ok(), i == 6) << i;
  }
  EXPECT_NE(records[0].error().message.find("malformed JSON"),
            std::string::npos);
  EXPECT_EQ(records[7].error().message, "duplicate cluster_id 'f'");
}

TEST(IngestTest, OptionalFields) {
  const DocumentCluster cluster = ParseClusterRecord(
      R"({"cluster_id":"c","documents":["San Juan burned."],"summary":"s",)"
      R"("entities":[{"surface":"San Juan","doc":0}]})");
  ASSERT_TRUE(cluster.gold_summary.has_value());
  EXPECT_EQ(*cluster.gold_summary, "s");
  ASSERT_TRUE(cluster.entity_annotations.has_value());
  EXPECT_EQ(cluster.entity_annotations->at(0).surface, "San Juan");
  EXPECT_EQ(ParseClusterRecord(ClusterToJson(cluster).dump()), cluster);
}

TEST(IngestTest, OrderPreservingAndDeterministic) {
  const std::string corpus =
      testing::MakeCorpus(7, 50, testing::SyntheticSpec{});
  const auto first = ReadAll(corpus);
  const auto second = ReadAll(corpus);
  ASSERT_EQ(first.size(), 50u);
  for (size_t i = 0; i < first.size(); ++i) {
    ASSERT_TRUE(first[i].ok());
    EXPECT_EQ(first[i].cluster().cluster_id, "c" + std::to_string(i));
    EXPECT_EQ(first[i].cluster(), second[i].cluster());
  }
}

TEST(IngestTest, CrlfLinesAccepted) {
  const auto records =
      ReadAll("{\"cluster_id\":\"a\",\"documents\":[\"x.\"]}\r\n");
  ASSERT_EQ(records.size(), 1u);
  EXPECT_TRUE(records[0].ok());
}

TEST(IngestTest, OpenInputMissingFileThrows) {
  EXPECT_THROW(OpenInput("/nonexistent/corpus.jsonl"), IoError);
}

// Streams `count` generated records without ever holding them all.
class GeneratedCorpus : public std::streambuf {
 public:
  GeneratedCorpus(size_t count, size_t doc_bytes)
      : count_(count), doc_bytes_(doc_bytes) {}

 protected:
  int_type underflow() override {
    if (next_ >= count_) return traits_type::eof();
    std::string doc;
    while (doc.size() < doc_bytes_) doc += "Some words of filler text here. ";
    line_ = "{\"cluster_id\":\"c" + std::to_string(next_++) +
            "\",\"documents\":[\"" + doc + "\",\"" + doc + "\"]}\n";
    setg(line_.data(), line_.data(), line_.data() + line_.size());
    return traits_type::to_int_type(line_[0]);
  }

 private:
  size_t count_;
  size_t doc_bytes_;
  size_t next_ = 0;
  std::string line_;
};

size_t CurrentVirtualBytes() {
  std::ifstream statm("/proc/self/statm");
  size_t pages = 0;
  statm >> pages;
  return pages * static_cast<size_t>(sysconf(_SC_PAGESIZE));
}

TEST(IngestTest, StreamingStaysWithinHeapBudget) {
  // 40000 records of ~8 KB each is ~320 MB of input; the child may only grow
  // its address space by 96 MB.
  constexpr size_t kRecords = 40000;
  constexpr size_t kBudget = 96u << 20;
  const pid_t pid = fork();
  ASSERT_GE(pid, 0);
  if (pid == 0) {
    GeneratedCorpus corpus(kRecords, 4000);
    std::istream in(&corpus);
    ClusterReader reader(in, "generated");
    const size_t base = CurrentVirtualBytes();
    rlimit limit{base + kBudget, base + kBudget};
    if (setrlimit(RLIMIT_AS, &limit) != 0) _exit(3);
    size_t ok = 0;
    try {
      while (auto record = reader.Next()) ok += record->ok() ? 1 : 0;
    } catch (...) {
      _exit(4);
    }
    _exit(ok == kRecords ? 0 : 5);
  }
  int status = 0;
  ASSERT_EQ(waitpid(pid, &status, 0), pid);
  ASSERT_TRUE(WIFEXITED(status)) << "child killed, likely out of memory";
  EXPECT_EQ(WEXITSTATUS(status), 0);
}

TEST(CorpusStatsTest, EmptyCorpus) {
  const CorpusStats stats = ComputeCorpusStats({});
  EXPECT_EQ(stats.example_count, 0u);
  EXPECT_FALSE(stats.mean_docs_per_cluster.has_value());
  EXPECT_EQ(CorpusStatsToJson(stats).dump(), R"({"example_count":0})");
}

TEST(CorpusStatsTest, MeanDocsPerCluster) {
  std::vector<DocumentCluster> clusters(2);
  clusters[0] = {"a", {"x.", "y."}, std::nullopt, std::nullopt};
  clusters[1] = {"b", {"x.", "y.", "z.", "w."}, std::nullopt, std::nullopt};
  const CorpusStats stats = ComputeCorpusStats(clusters);
  EXPECT_EQ(stats.example_count, 2u);
  EXPECT_DOUBLE_EQ(*stats.mean_docs_per_cluster, 3.0);
  EXPECT_FALSE(stats.mean_summary_length.has_value());
}

TEST(CorpusStatsTest, SourceLengthInWhitespaceTokens) {
  std::vector<DocumentCluster> clusters(1);
  clusters[0] = {"a", {"a b c", "d e"}, std::string("s t"), std::nullopt};
  const CorpusStats stats = ComputeCorpusStats(clusters);
  EXPECT_DOUBLE_EQ(*stats.mean_source_length, 5.0);
  EXPECT_DOUBLE_EQ(*stats.mean_summary_length, 2.0);
  const auto json = CorpusStatsToJson(stats);
  EXPECT_EQ(json["length_unit"], "whitespace_tokens");
}

TEST(CorpusStatsTest, NewsClusterShapedCorpus) {
  // Half the clusters have 3 documents and half 4; every cluster holds 1734
  // source tokens, so the means are 3.5 documents and 1734 tokens.
  CorpusStatsAccumulator stats;
  const auto words = [](int n) {
    std::string out;
    for (int i = 0; i < n; ++i) out += i == 0 ? "w" : " w";
    return out;
  };
  constexpr int kClusters = 3600;
  for (int i = 0; i < kClusters; ++i) {
    DocumentCluster cluster;
    cluster.cluster_id = "c" + std::to_string(i);
    if (i % 2 == 0) {
      cluster.documents = {words(578), words(578), words(578)};
    } else {
      cluster.documents = {words(434), words(434), words(433), words(433)};
    }
    stats.Add(cluster);
  }
  const CorpusStats result = stats.Result();
  EXPECT_EQ(result.example_count, static_cast<size_t>(kClusters));
  EXPECT_DOUBLE_EQ(*result.mean_docs_per_cluster, 3.5);
  EXPECT_DOUBLE_EQ(*result.mean_source_length, 1734.0);
}

}  // namespace
}  // namespace pyramid_masker
