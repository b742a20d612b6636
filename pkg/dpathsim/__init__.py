"""dpathsim - switch datapath delay simulation from empirical stage-delay distributions."""

__version__ = "0.1.0"
