/*
 * Copyright 2026 The padlight Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
// Runs the padlight executable end to end.
#include <doctest.h>

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "core/frame_codec.hpp"
#include "support/ws_client.hpp"

namespace fs = std::filesystem;

extern char** environ;

namespace {

const std::string kCli = PADLIGHT_CLI_PATH;
const fs::path kData = PADLIGHT_DATA_DIR;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("padlight_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Result run(const std::string& args, const std::string& stdin_path = "/dev/null") {
  const fs::path out = scratch("stdout.txt");
  const fs::path err = scratch("stderr.txt");
  const std::string cmd = "'" + kCli + "' " + args + " < '" + stdin_path + "' > '" +
                          out.string() + "' 2> '" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

void write_bytes(const fs::path& p, const std::vector<std::uint8_t>& bytes) {
  std::ofstream f(p, std::ios::binary);
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::uint8_t> frames(std::initializer_list<padlight::TouchSample> samples) {
  std::vector<std::uint8_t> out;
  for (const auto& s : samples) {
    const auto f = padlight::encode_frame(s);
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

// Child process running `padlight serve`, stderr captured to a file.
class ServeProcess {
 public:
  explicit ServeProcess(const std::vector<std::string>& extra) : log_(scratch("serve.log")) {
    std::vector<std::string> args{kCli, "serve"};
    args.insert(args.end(), extra.begin(), extra.end());
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    argv.push_back(nullptr);

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_addopen(&actions, 2, log_.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    posix_spawn_file_actions_addopen(&actions, 1, "/dev/null", O_WRONLY, 0);
    REQUIRE(posix_spawn(&pid_, kCli.c_str(), &actions, nullptr, argv.data(), environ) == 0);
    posix_spawn_file_actions_destroy(&actions);
  }

  ~ServeProcess() {
    if (pid_ > 0) {
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, nullptr, 0);
    }
  }

  // Waits for the "listening" log line and returns its port (0 on exit/timeout).
  int wait_listening() {
    const std::regex re(R"(listening on ws://[^:]+:(\d+))");
    for (int i = 0; i < 200; ++i) {
      std::smatch m;
      const std::string text = slurp(log_);
      if (std::regex_search(text, m, re)) return std::stoi(m[1]);
      int status = 0;
      if (::waitpid(pid_, &status, WNOHANG) == pid_) {
        exit_code_ = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        pid_ = -1;
        return 0;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(25));
    }
    return 0;
  }

  int interrupt() {
    ::kill(pid_, SIGINT);
    int status = 0;
    ::waitpid(pid_, &status, 0);
    pid_ = -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  int exit_code() const { return exit_code_; }
  std::string log() const { return slurp(log_); }

 private:
  fs::path log_;
  pid_t pid_ = -1;
  int exit_code_ = -1;
};

}  // namespace

TEST_CASE("decode: clean two-frame file") {
  const fs::path f = scratch("two.bin");
  write_bytes(f, frames({{0, 6143, 80, true, 0}, {1300, 17, 255, false, 0}}));
  const Result r = run("decode '" + f.string() + "' --frame-period 25");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "{\"t_ms\":0,\"x\":0,\"y\":6143,\"z\":80,\"finger\":true}\n"
        "{\"t_ms\":25,\"x\":1300,\"y\":17,\"z\":255,\"finger\":false}\n");
  CHECK(r.err.empty());
}

TEST_CASE("decode: stdin and host clock") {
  const fs::path f = scratch("one.bin");
  write_bytes(f, frames({{5, 6, 7, true, 0}}));
  const Result r = run("decode", f.string());
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 1);
  CHECK(r.out.find("\"x\":5") != std::string::npos);
}

TEST_CASE("decode: empty input exits 2") {
  const fs::path f = scratch("empty.bin");
  write_bytes(f, {});
  const Result r = run("decode '" + f.string() + "'");
  CHECK(r.code == 2);
  CHECK(r.out.empty());
}

TEST_CASE("decode: corrupted stream gives partial output and diagnostics") {
  auto bytes = frames({{0, 0, 90, true, 0}, {100, 200, 90, true, 0}, {4000, 6000, 90, true, 0}});
  bytes.erase(bytes.begin() + 8);               // drop a byte from frame 1
  bytes.insert(bytes.begin(), {0x00, 0x13});    // leading junk
  const fs::path f = scratch("corrupt.bin");
  write_bytes(f, bytes);
  const Result r = run("decode '" + f.string() + "' --frame-period 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"x\":0,") != std::string::npos);
  CHECK(r.out.find("\"x\":4000") != std::string::npos);
  CHECK(r.err.find("diagnostic offset=0") != std::string::npos);
  CHECK(r.err.find("FramingError") != std::string::npos);
}

TEST_CASE("decode: unreadable input exits 1") {
  const Result r = run("decode /nonexistent/frames.bin");
  CHECK(r.code == 1);
}

TEST_CASE("map") {
  Result r = run("map 0 6143");
  CHECK(r.code == 0);
  CHECK(r.out == "slider=0 channel=red level=22\n");

  r = run("map 1024 4000");
  CHECK(r.code == 0);
  CHECK(r.out == "gap\n");

  r = run("map 6143 3072");
  CHECK(r.out == "slider=4 channel=white level=11\n");

  r = run("map 9999 0");
  CHECK(r.code == 1);
  CHECK(r.err.find("RangeError") != std::string::npos);

  r = run("map 0 0 --y-inverted");
  CHECK(r.out == "slider=0 channel=red level=22\n");

  r = run("map 1100 0 --band-width 1152 --gap-width 96");
  CHECK(r.out == "slider=0 channel=red level=0\n");

  r = run("map 0 0 --band-width 1000");
  CHECK(r.code == 1);
  CHECK(r.err.find("InvalidArgument") != std::string::npos);

  r = run("map 0 0 --levels 24");
  CHECK(r.code == 1);

  r = run("map");
  CHECK(r.code == 1);
  r = run("frobnicate");
  CHECK(r.code == 1);
}

TEST_CASE("replay: bundled sweep matches the golden log byte for byte") {
  const std::string trace = (kData / "traces" / "sweep5.jsonl").string();
  const std::string golden = slurp(kData / "golden" / "sweep5.log");
  REQUIRE_FALSE(golden.empty());
  for (const char* limiter : {"off", "on"}) {
    const Result r = run("replay '" + trace + "' --limiter " + limiter);
    CHECK(r.code == 0);
    CHECK(r.out == golden);
  }
}

TEST_CASE("replay: metrics and single record") {
  const fs::path f = scratch("single.jsonl");
  std::ofstream(f) << "{\"t_ms\":0,\"x\":0,\"y\":6143,\"z\":80,\"finger\":true}\n";
  const Result r = run("replay '" + f.string() + "' --metrics");
  CHECK(r.code == 0);
  CHECK(r.out == "0 C016D6\n");
  const auto m = nlohmann::json::parse(r.err);
  CHECK(m["samples_in"] == 1);
  CHECK(m["commands_out"] == 1);
  CHECK(m["max_latency_ms"] == 0);

  const Result piped = run("replay - --limiter off", f.string());
  CHECK(piped.out == "0 C016D6\n");
}

TEST_CASE("replay: empty trace") {
  const fs::path f = scratch("empty.jsonl");
  std::ofstream(f) << "# nothing here\n";
  const Result r = run("replay '" + f.string() + "'");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
}

TEST_CASE("replay: malformed trace exits 1 with the line number") {
  const fs::path f = scratch("bad.jsonl");
  std::ofstream(f) << "{\"t_ms\":0,\"x\":0,\"y\":6143,\"z\":80,\"finger\":true}\n"
                   << "{\"t_ms\":1,\"x\":0,\"y\":6143,\"z\":80}\n";
  const Result r = run("replay '" + f.string() + "'");
  CHECK(r.code == 1);
  CHECK(r.err.find("TraceFormatError: line 2") != std::string::npos);
  CHECK(r.out.empty());

  CHECK(run("replay /nonexistent.jsonl").code == 1);
  CHECK(run("replay '" + f.string() + "' --limiter maybe").code == 1);
}

TEST_CASE("replay is deterministic") {
  const std::string trace = (kData / "traces" / "sweep5.jsonl").string();
  const Result a = run("replay '" + trace + "' --metrics");
  const Result b = run("replay '" + trace + "' --metrics");
  CHECK(a.out == b.out);
  CHECK(a.err == b.err);
}

TEST_CASE("serve: scripted session then clean shutdown") {
  ServeProcess proc({"--bind", "127.0.0.1:0"});
  const int port = proc.wait_listening();
  REQUIRE_MESSAGE(port > 0, proc.log());

  {
    wsclient::Client c(static_cast<std::uint16_t>(port));
    CHECK(c.receive()["type"] == "state");
    CHECK(c.receive()["type"] == "layout");
    c.touch(0, 6143, 128, true);
    const auto st = c.receive();
    CHECK(st["levels"] == nlohmann::json({22, 0, 0, 0, 0}));
    CHECK(st["rgb"] == nlohmann::json({255, 0, 0}));
    c.send("garbage");
    CHECK(c.receive()["type"] == "error");
    c.touch(1300, 0, 128, true);  // level 0 already: no broadcast
    c.touch(1300, 6143, 128, true);
    CHECK(c.receive()["levels"] == nlohmann::json({22, 22, 0, 0, 0}));
  }
  CHECK(proc.interrupt() == 0);
}

TEST_CASE("serve: busy port exits 1") {
  ServeProcess first({"--bind", "127.0.0.1:0"});
  const int port = first.wait_listening();
  REQUIRE(port > 0);
  ServeProcess second({"--bind", "127.0.0.1:" + std::to_string(port)});
  CHECK(second.wait_listening() == 0);
  CHECK(second.exit_code() == 1);
  CHECK(second.log().find("BindError") != std::string::npos);
}
