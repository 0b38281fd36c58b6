from latentsym.dynamics.propagator import occupations, propagate, trajectory

__all__ = ["occupations", "propagate", "trajectory"]
