"""Named reference pins with their maximal mesh dimensions."""

from .pins import Pin

ZOO = {
    "lower_pentagram": ([(0, 0), (1, 0), (0, 1), (1, 1)], 1),
    "pentagram": ([(0, 0), (2, 0), (0, 1), (1, 1)], 2),
    "higher_pentagram": ([(0, 0), (3, 0), (1, 1), (2, 1)], 3),
    "sideways": ([(0, 0), (1, 0), (1, 1), (0, 2)], 2),
    "short_diagonal": ([(-1, 0), (1, 0), (0, 1), (0, 2)], 3),
    "dented": ([(1, 0), (2, 1), (0, 2), (1, 2)], 3),
    "gopher": ([(0, 0), (1, 0), (1, 1), (2, 3)], 2),
    "penguin": ([(0, 0), (1, 0), (0, 2), (0, 3)], 2),
    "rabbit": ([(-1, 0), (1, 1), (0, 2), (0, 3)], 4),
    "giraffe": ([(0, 0), (2, 0), (1, 1), (2, 3)], 5),
    "kangaroo": ([(1, 0), (1, 1), (0, 2), (2, 4)], 5),
    "elephant": ([(1, 0), (1, 1), (0, 2), (3, 3)], 6),
}

BOUNDARY_PINS = ("penguin",)


def zoo_pin(name):
    return Pin(ZOO[name][0])


def zoo_dim(name):
    return ZOO[name][1]
