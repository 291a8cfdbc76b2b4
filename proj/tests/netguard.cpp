// Preloaded into offline test runs. Any attempt to open an internet socket
// ends the process with exit status 97.

#include <dlfcn.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>

extern "C" int connect(int fd, const struct sockaddr* addr, socklen_t len) {
  if (addr && (addr->sa_family == AF_INET || addr->sa_family == AF_INET6)) {
    static const char msg[] = "netguard: blocked outbound connection\n";
    [[maybe_unused]] auto n = ::write(2, msg, sizeof msg - 1);
    ::_exit(97);
  }
  using connect_fn = int (*)(int, const struct sockaddr*, socklen_t);
  static auto real = reinterpret_cast<connect_fn>(::dlsym(RTLD_NEXT, "connect"));
  return real(fd, addr, len);
}
