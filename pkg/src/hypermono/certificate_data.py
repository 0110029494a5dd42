# Published certificate data for the degree-six cases C-47 and C-55.
# x1 and x2 are the first nonzero columns of T - I and gamma T gamma^-1 - I.

BUILTIN_DATA = {
    "C-47": {
        "alpha": "0,0,1/5,2/5,3/5,4/5",
        "beta": "1/2,1/2,1/3,1/3,2/3,2/3",
        "f": "x^6 - x^5 - x + 1",
        "g": "x^6 + 4x^5 + 8x^4 + 10x^3 + 8x^2 + 4x + 1",
        "word": (
            "bbbbbaabbbbbbAAbbbbbbaabbbbbbAAbbbbbbAAbbbbbbABaBaaBBBBBBAAAbAbaaBaBaBaBaBAAAAAAABaBaB"
            "BaBabaa"
        ),
        "sha256": "6b0461150a23c1ffe34b872e6dc2a445db4d5d73ad9977d03a38c638ae6705f5",
        "word_length": 93,
        "omega": [
            [0, 29, -50, 51, -28, 1],
            [-29, 0, 29, -50, 51, -28],
            [50, -29, 0, 29, -50, 51],
            [-51, 50, -29, 0, 29, -50],
            [28, -51, 50, -29, 0, 29],
            [-1, 28, -51, 50, -29, 0],
        ],
        "det_omega": 1679616,
        "x1": [-5, -8, -10, -8, -5, 0],
        "x2": [491566906334, 537748595482, 224774947812, 73905511690, -18977654566, 0],
    },
    "C-55": {
        "alpha": "0,0,1/8,3/8,5/8,7/8",
        "beta": "1/2,1/2,1/12,5/12,7/12,11/12",
        "f": "x^6 - 2x^5 + x^4 + x^2 - 2x + 1",
        "g": "x^6 + 2x^5 - 2x^3 + 2x + 1",
        "word": "baaaabaaaabaaaabaaaabaaaabaaaabaaaaaBABaBABAAbaaB",
        "sha256": "e2ab5e22b612e89b3d725ca31fe7ebb621692f29f4f13d28ab34c632b6eb7ae6",
        "word_length": 49,
        "omega": [
            [0, 1, 6, 3, 4, 5],
            [-1, 0, 1, 6, 3, 4],
            [-6, -1, 0, 1, 6, 3],
            [-3, -6, -1, 0, 1, 6],
            [-4, -3, -6, -1, 0, 1],
            [-5, -4, -3, -6, -1, 0],
        ],
        "det_omega": 4096,
        "x1": [-4, 1, 2, 1, -4, 0],
        "x2": [40999920, -275447328, -132048384, 236325024, 314749968, 0],
    },
}
