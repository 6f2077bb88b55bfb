#include "linebot/telemetry/bridge.hpp"

#include <array>
#include <deque>
#include <mutex>
#include <string>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "linebot/errors.hpp"
#include "linebot/telemetry/json_codec.hpp"

namespace linebot::telemetry {
namespace {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

// Clients that stop reading lose frames rather than growing the queue.
constexpr std::size_t kMaxQueuedMessages = 4096;

}  // namespace

struct Bridge::Impl {
  net::io_context ioc;
  net::executor_work_guard<net::io_context::executor_type> work{net::make_work_guard(ioc)};
  tcp::acceptor tcp_acceptor{ioc};
  tcp::acceptor ws_acceptor{ioc};
  std::thread thread;
  bool stopped = false;

  std::mutex inbound_mu;
  std::vector<Frame> inbound;

  // Accessed on the io thread only.
  struct TcpSession;
  struct WsSession;
  std::vector<std::weak_ptr<TcpSession>> tcp_sessions;
  std::vector<std::weak_ptr<WsSession>> ws_sessions;
  SequenceCounter ws_command_seq;
  SequenceCounter bridge_seq;

  void push_command(Frame f) {
    std::lock_guard lock(inbound_mu);
    inbound.push_back(std::move(f));
  }

  void accept_tcp();
  void accept_ws();
};

struct Bridge::Impl::TcpSession : std::enable_shared_from_this<TcpSession> {
  TcpSession(tcp::socket s, Impl* o) : socket(std::move(s)), owner(o) {}

  void start() { read(); }

  void read() {
    socket.async_read_some(net::buffer(buf), [self = shared_from_this()](beast::error_code ec,
                                                                         std::size_t n) {
      if (ec) return;
      for (auto& f : self->decoder.feed(std::span(self->buf.data(), n))) {
        if (is_command(f.type)) self->owner->push_command(std::move(f));
      }
      self->read();
    });
  }

  void send(std::shared_ptr<const std::vector<std::uint8_t>> bytes) {
    if (out.size() >= kMaxQueuedMessages) return;
    out.push_back(std::move(bytes));
    if (out.size() == 1) write();
  }

  void write() {
    net::async_write(socket, net::buffer(*out.front()),
                     [self = shared_from_this()](beast::error_code ec, std::size_t) {
                       if (ec) {
                         self->out.clear();
                         return;
                       }
                       self->out.pop_front();
                       if (!self->out.empty()) self->write();
                     });
  }

  void close() {
    beast::error_code ec;
    socket.shutdown(tcp::socket::shutdown_both, ec);
    socket.close(ec);
  }

  tcp::socket socket;
  Impl* owner;
  std::array<std::uint8_t, 1024> buf{};
  StreamDecoder decoder;
  std::deque<std::shared_ptr<const std::vector<std::uint8_t>>> out;
};

struct Bridge::Impl::WsSession : std::enable_shared_from_this<WsSession> {
  WsSession(tcp::socket s, Impl* o) : ws(std::move(s)), owner(o) {}

  void start() {
    ws.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws.async_accept([self = shared_from_this()](beast::error_code ec) {
      if (ec) return;
      self->open = true;
      self->ws.text(true);
      self->read();
      if (!self->out.empty()) self->write();
    });
  }

  void read() {
    ws.async_read(buffer, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->open = false;
        return;
      }
      const std::string text = beast::buffers_to_string(self->buffer.data());
      self->buffer.consume(self->buffer.size());
      self->handle(text);
      self->read();
    });
  }

  void handle(const std::string& text) {
    std::string error;
    if (auto frame = command_from_json(text, owner->ws_command_seq.next(), &error)) {
      owner->push_command(std::move(*frame));
      return;
    }
    const auto nack = make_ack(owner->bridge_seq.next(),
                               {command_seq(text).value_or(0), AckStatus::kMalformed});
    auto j = frame_to_json(nack);
    j["error"] = error;
    send(std::make_shared<const std::string>(j.dump()));
  }

  void send(std::shared_ptr<const std::string> text) {
    if (out.size() >= kMaxQueuedMessages) return;
    out.push_back(std::move(text));
    if (open && out.size() == 1) write();
  }

  void write() {
    ws.async_write(net::buffer(*out.front()),
                   [self = shared_from_this()](beast::error_code ec, std::size_t) {
                     if (ec) {
                       self->open = false;
                       self->out.clear();
                       return;
                     }
                     self->out.pop_front();
                     if (!self->out.empty()) self->write();
                   });
  }

  void close() {
    beast::error_code ec;
    beast::get_lowest_layer(ws).socket().shutdown(tcp::socket::shutdown_both, ec);
    beast::get_lowest_layer(ws).socket().close(ec);
  }

  websocket::stream<beast::tcp_stream> ws;
  Impl* owner;
  beast::flat_buffer buffer;
  bool open = false;
  std::deque<std::shared_ptr<const std::string>> out;
};

void Bridge::Impl::accept_tcp() {
  tcp_acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
    if (ec) return;
    auto session = std::make_shared<TcpSession>(std::move(socket), this);
    std::erase_if(tcp_sessions, [](const auto& w) { return w.expired(); });
    tcp_sessions.push_back(session);
    session->start();
    accept_tcp();
  });
}

void Bridge::Impl::accept_ws() {
  ws_acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
    if (ec) return;
    auto session = std::make_shared<WsSession>(std::move(socket), this);
    std::erase_if(ws_sessions, [](const auto& w) { return w.expired(); });
    ws_sessions.push_back(session);
    session->start();
    accept_ws();
  });
}

namespace {

void listen(tcp::acceptor& acceptor, std::uint16_t port, const char* what) {
  const tcp::endpoint endpoint(tcp::v4(), port);
  beast::error_code ec;
  acceptor.open(endpoint.protocol(), ec);
  if (!ec) acceptor.set_option(net::socket_base::reuse_address(true), ec);
  if (!ec) acceptor.bind(endpoint, ec);
  if (!ec) acceptor.listen(net::socket_base::max_listen_connections, ec);
  if (ec) {
    throw IoError(std::string("cannot bind ") + what + " port " + std::to_string(port) + ": " +
                  ec.message());
  }
}

}  // namespace

Bridge::Bridge(std::uint16_t tcp_port, std::uint16_t ws_port) : impl_(std::make_shared<Impl>()) {
  listen(impl_->tcp_acceptor, tcp_port, "tcp");
  listen(impl_->ws_acceptor, ws_port, "websocket");
  impl_->accept_tcp();
  impl_->accept_ws();
  impl_->thread = std::thread([impl = impl_.get()] { impl->ioc.run(); });
}

Bridge::~Bridge() { stop(); }

std::uint16_t Bridge::tcp_port() const { return impl_->tcp_acceptor.local_endpoint().port(); }
std::uint16_t Bridge::ws_port() const { return impl_->ws_acceptor.local_endpoint().port(); }

std::vector<Frame> Bridge::take_commands() {
  std::lock_guard lock(impl_->inbound_mu);
  return std::exchange(impl_->inbound, {});
}

void Bridge::publish(const Frame& frame) {
  auto bytes = std::make_shared<const std::vector<std::uint8_t>>(encode_frame(frame));
  auto text = std::make_shared<const std::string>(frame_to_json(frame).dump());
  net::post(impl_->ioc, [impl = impl_.get(), bytes, text] {
    for (const auto& w : impl->tcp_sessions) {
      if (auto s = w.lock()) s->send(bytes);
    }
    for (const auto& w : impl->ws_sessions) {
      if (auto s = w.lock()) s->send(text);
    }
  });
}

void Bridge::stop() {
  if (!impl_ || impl_->stopped) return;
  impl_->stopped = true;
  net::post(impl_->ioc, [impl = impl_.get()] {
    beast::error_code ec;
    impl->tcp_acceptor.close(ec);
    impl->ws_acceptor.close(ec);
    for (const auto& w : impl->tcp_sessions) {
      if (auto s = w.lock()) s->close();
    }
    for (const auto& w : impl->ws_sessions) {
      if (auto s = w.lock()) s->close();
    }
    impl->work.reset();
  });
  impl_->ioc.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace linebot::telemetry
