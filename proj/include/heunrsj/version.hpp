#ifndef HEUNRSJ_VERSION_HPP
#define HEUNRSJ_VERSION_HPP

#define HEUNRSJ_VERSION "0.1.0"

#endif
