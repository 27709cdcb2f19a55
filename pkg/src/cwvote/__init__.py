"""cwvote - Curie-Weiss voting model estimation and council weights."""

__version__ = "0.1.0"
__author__ = "mmocchi"
__email__ = "mmocchi@example.com"

# Bumped whenever the sampler's draw order or seeding changes, so that stored
# samples can be tied to the code that produced them.
SAMPLER_VERSION = "1"
