CONFIG_TEMPLATE_YAML = """
# Default vector store used by the query commands. The CA_ATLAS_STORE
# environment variable and the --store flag take precedence.
store: ~/atlas/vectors.cavs

# Global seed for every random stream. Fixing it makes sweeps repeatable.
seed: 0

# Worker processes used by 'caatlas sweep'.
jobs: 1

sampling:
  # Soup densities are drawn uniformly from this range.
  density_range: [0.0, 1.0]
  # Side length of the square soup.
  initial_size: 16
  # Generations to run before sampling.
  num_steps: 50
  # Transitions sampled per run (per half for strobing rules).
  num_samples: 50
  # Runs per rule. Lower it (e.g. 100) for desk-scale experiments.
  num_trials: 1000
"""
