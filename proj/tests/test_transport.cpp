#include <doctest.h>

#include "cutgrid/errors.hpp"
#include "cutgrid/transport.hpp"

using namespace cutgrid;

TEST_CASE("gather then scatter, trace shape and order") {
  SimWorld world(2);
  world.run([](int rank, Transport& t) {
    if (rank == t.coarse_rank()) {
      auto payloads = t.gather("1:collect", {});
      REQUIRE(payloads.size() == 2);
      CHECK(payloads[0] == Bytes{10});
      CHECK(payloads[1] == Bytes{11});
      t.scatter("2:reply", {{20}, {21, 22}});
    } else {
      t.gather("1:collect", {uint8_t(10 + rank)});
      Bytes mine = t.scatter("2:reply", {});
      if (rank == 0) CHECK(mine == Bytes{20});
      if (rank == 1) CHECK(mine == (Bytes{21, 22}));
    }
  });

  const auto& trace = world.trace();
  REQUIRE(trace.size() == 4);
  CHECK(trace[0].phase == "1:collect");
  CHECK(trace[0].kind == MsgKind::kGather);
  CHECK(trace[0].src == 0);
  CHECK(trace[0].dst == 2);
  CHECK(trace[1].src == 1);
  CHECK(trace[2].kind == MsgKind::kScatter);
  CHECK(trace[2].dst == 0);
  CHECK(trace[3].dst == 1);
  CHECK(trace[3].bytes == 2);
}

TEST_CASE("repeated runs produce bitwise-identical traces") {
  auto run_once = [] {
    SimWorld world(3);
    world.run([](int rank, Transport& t) {
      if (rank == t.coarse_rank()) {
        t.gather("1:g", {});
        t.scatter("2:s", {{0}, {1}, {2}});
      } else {
        if (rank < 2) t.sendrecv("0:x", 1 - rank, {uint8_t(rank)});
        t.gather("1:g", {uint8_t(rank)});
        t.scatter("2:s", {});
      }
    });
    return world.trace_text();
  };
  std::string a = run_once();
  std::string b = run_once();
  CHECK(a == b);
  CHECK(a.find("0:x sendrecv 0 1 1") != std::string::npos);
  CHECK(a.find("0:x sendrecv 1 0 1") != std::string::npos);
}

TEST_CASE("sendrecv swaps payloads symmetrically") {
  SimWorld world(2);
  world.run([](int rank, Transport& t) {
    if (rank == t.coarse_rank()) return;
    Bytes got = t.sendrecv("1:swap", 1 - rank, Bytes{uint8_t(100 + rank)});
    CHECK(got == Bytes{uint8_t(100 + (1 - rank))});
  });
  CHECK(world.trace().size() == 2);
}

TEST_CASE("mismatched collectives deadlock with a snapshot") {
  SimWorld world(2);
  CHECK_THROWS_WITH_AS(
      world.run([](int rank, Transport& t) {
        // rank 0 waits on a partner that never calls sendrecv
        if (rank == 0) t.sendrecv("1:orphan", 1, {1});
      }),
      doctest::Contains("deadlock"), ProtocolError);
}

TEST_CASE("rank exceptions surface to the caller") {
  SimWorld world(1);
  CHECK_THROWS_AS(world.run([](int rank, Transport&) {
                    if (rank == 0) throw GeometryError("boom");
                  }),
                  GeometryError);
}

TEST_CASE("event logs are per rank") {
  SimWorld world(2);
  world.run([](int rank, Transport& t) {
    t.log_event("start:" + std::to_string(rank));
    if (rank != t.coarse_rank()) t.log_event("work");
  });
  const auto& logs = world.event_logs();
  REQUIRE(logs.size() == 3);
  CHECK(logs[0] == std::vector<std::string>{"start:0", "work"});
  CHECK(logs[2] == std::vector<std::string>{"start:2"});
}
