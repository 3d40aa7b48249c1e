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
#include "core/server.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <deque>
#include <set>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <json.hpp>

namespace padlight {

namespace beast = boost::beast;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;
using nlohmann::json;

std::pair<std::string, std::uint16_t> parse_bind_address(const std::string& s) {
  const auto colon = s.rfind(':');
  if (colon == std::string::npos || colon + 1 == s.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "bind address must be host:port, got \"" + s + "\"");
  }
  std::string host = s.substr(0, colon);
  if (host.size() >= 2 && host.front() == '[' && host.back() == ']') {
    host = host.substr(1, host.size() - 2);
  }
  if (host.empty()) host = "0.0.0.0";

  const std::string port_text = s.substr(colon + 1);
  unsigned port = 0;
  auto [ptr, ec] = std::from_chars(port_text.data(),
                                   port_text.data() + port_text.size(), port);
  if (ec != std::errc{} || ptr != port_text.data() + port_text.size() ||
      port > 65535) {
    throw Error(ErrorCode::kInvalidArgument, "bad port \"" + port_text + "\"");
  }
  return {host, static_cast<std::uint16_t>(port)};
}

namespace protocol {

std::string state_message(const LightState& state) {
  json j;
  j["type"] = "state";
  j["levels"] = state.levels;
  j["rgb"] = blend_display(state);
  return j.dump();
}

std::string layout_message(const EngineConfig& config) {
  const SliderLayout& l = config.layout;
  json j;
  j["type"] = "layout";
  j["slider_count"] = SliderLayout::slider_count;
  j["band_width"] = l.band_width;
  j["gap_width"] = l.gap_width;
  j["x_max"] = l.x_max;
  j["y_max"] = l.y_max;
  j["level_count"] = l.level_count;
  j["y_inverted"] = l.y_inverted;
  j["z_threshold"] = config.z_threshold;
  return j.dump();
}

std::string error_message(const std::string& text) {
  json j;
  j["type"] = "error";
  j["message"] = text;
  return j.dump();
}

TouchSample parse_touch(const std::string& text) {
  const json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "message is not a JSON object");
  }
  auto type = j.find("type");
  if (type == j.end() || !type->is_string() || *type != "touch") {
    throw Error(ErrorCode::kInvalidArgument, "expected \"type\":\"touch\"");
  }
  auto integer = [&](const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number_integer()) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("\"") + key + "\" must be an integer");
    }
    const auto v = it->get<std::int64_t>();
    if (v < 0 || v > (std::string_view(key) == "z" ? kPressureMax : kCoordMax)) {
      throw Error(ErrorCode::kRange,
                  std::string("\"") + key + "\" out of range");
    }
    return static_cast<int>(v);
  };
  TouchSample s;
  s.x = integer("x");
  s.y = integer("y");
  s.z = integer("z");
  auto finger = j.find("finger");
  if (finger == j.end() || !finger->is_boolean()) {
    throw Error(ErrorCode::kInvalidArgument, "\"finger\" must be a boolean");
  }
  s.finger = finger->get<bool>();
  return s;
}

}  // namespace protocol

namespace server_detail {
class Session;
}  // namespace server_detail
using server_detail::Session;

struct Server::Impl {
  Impl(EngineConfig config, bool limiter_on)
      : pipeline(config, limiter_on) {}

  void start(const std::string& bind_address);
  void do_accept();
  void join(const std::shared_ptr<Session>& s);
  void leave(const std::shared_ptr<Session>& s);
  void handle_message(const std::shared_ptr<Session>& s,
                      const std::string& text);
  void broadcast(const std::string& msg);
  void arm_flush_timer();
  std::int64_t now_ms() const {
    using namespace std::chrono;
    return duration_cast<milliseconds>(steady_clock::now() - epoch).count();
  }

  net::io_context ioc{1};
  tcp::acceptor acceptor{ioc};
  net::steady_timer flush_timer{ioc};
  std::chrono::steady_clock::time_point epoch = std::chrono::steady_clock::now();
  Pipeline pipeline;
  std::set<std::shared_ptr<Session>> sessions;
  std::string host;
};

namespace server_detail {

class Session : public std::enable_shared_from_this<Session> {
 public:
  Session(tcp::socket socket, Server::Impl& server)
      : ws_(std::move(socket)), server_(server) {}

  void start() {
    ws_.set_option(
        websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(
        [self = shared_from_this()](beast::error_code ec) {
          if (ec) return;
          self->server_.join(self);
          self->do_read();
        });
  }

  void send(std::string msg) {
    queue_.push_back(std::move(msg));
    if (queue_.size() == 1) do_write();
  }

  void close() { beast::get_lowest_layer(ws_).close(); }

 private:
  void do_read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec,
                                                        std::size_t) {
      if (ec) {
        self->server_.leave(self);
        return;
      }
      const bool text = self->ws_.got_text();
      std::string msg = beast::buffers_to_string(self->buffer_.data());
      self->buffer_.consume(self->buffer_.size());
      if (text) {
        self->server_.handle_message(self, msg);
      } else {
        self->send(protocol::error_message("expected a text message"));
      }
      self->do_read();
    });
  }

  void do_write() {
    ws_.text(true);
    ws_.async_write(net::buffer(queue_.front()),
                    [self = shared_from_this()](beast::error_code ec,
                                                std::size_t) {
                      if (ec) {
                        self->server_.leave(self);
                        return;
                      }
                      self->queue_.pop_front();
                      if (!self->queue_.empty()) self->do_write();
                    });
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  std::deque<std::string> queue_;
  Server::Impl& server_;
};

}  // namespace server_detail

void Server::Impl::start(const std::string& bind_address) {
  auto [h, port] = parse_bind_address(bind_address);
  host = h;
  beast::error_code ec;
  tcp::resolver resolver(ioc);
  auto results = resolver.resolve(h, std::to_string(port), ec);
  if (ec || results.empty()) {
    throw Error(ErrorCode::kBind, "cannot resolve " + h + ": " + ec.message());
  }
  const tcp::endpoint ep = results.begin()->endpoint();
  auto fail = [&](const char* what) {
    throw Error(ErrorCode::kBind, std::string(what) + " " + bind_address +
                                      ": " + ec.message());
  };
  acceptor.open(ep.protocol(), ec);
  if (ec) fail("open");
  acceptor.set_option(net::socket_base::reuse_address(true), ec);
  if (ec) fail("set_option");
  acceptor.bind(ep, ec);
  if (ec) fail("bind");
  acceptor.listen(net::socket_base::max_listen_connections, ec);
  if (ec) fail("listen");

  pipeline.on_batch([this](const Batch&) {
    broadcast(protocol::state_message(pipeline.light_state()));
  });
  do_accept();
}

void Server::Impl::do_accept() {
  acceptor.async_accept(
      net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
        if (ec == net::error::operation_aborted) return;
        if (!ec) std::make_shared<Session>(std::move(socket), *this)->start();
        do_accept();
      });
}

void Server::Impl::join(const std::shared_ptr<Session>& s) {
  sessions.insert(s);
  s->send(protocol::state_message(pipeline.light_state()));
  s->send(protocol::layout_message(pipeline.config()));
}

void Server::Impl::leave(const std::shared_ptr<Session>& s) {
  sessions.erase(s);
}

void Server::Impl::handle_message(const std::shared_ptr<Session>& s,
                                  const std::string& text) {
  try {
    TouchSample sample = protocol::parse_touch(text);
    sample.t_ms = now_ms();
    pipeline.ingest(sample);
    arm_flush_timer();
  } catch (const Error& e) {
    s->send(protocol::error_message(std::string(to_string(e.code())) + ": " +
                                    e.what()));
  }
}

void Server::Impl::broadcast(const std::string& msg) {
  for (const auto& s : sessions) s->send(msg);
}

void Server::Impl::arm_flush_timer() {
  const auto due = pipeline.next_deadline();
  if (!due) return;
  flush_timer.expires_at(epoch + std::chrono::milliseconds(*due));
  flush_timer.async_wait([this](beast::error_code ec) {
    if (ec) return;
    pipeline.advance(now_ms());
    arm_flush_timer();
  });
}

Server::Server(EngineConfig config, const std::string& bind_address,
               bool limiter_on)
    : impl_(std::make_unique<Impl>(config, limiter_on)) {
  impl_->start(bind_address);
}

Server::~Server() {
  impl_->ioc.stop();
  for (const auto& s : impl_->sessions) s->close();
  impl_->sessions.clear();
}

std::uint16_t Server::port() const { return impl_->acceptor.local_endpoint().port(); }

std::string Server::address() const {
  const auto ep = impl_->acceptor.local_endpoint();
  return ep.address().to_string() + ":" + std::to_string(ep.port());
}

void Server::run() { impl_->ioc.run(); }

void Server::stop() { impl_->ioc.stop(); }

}  // namespace padlight
