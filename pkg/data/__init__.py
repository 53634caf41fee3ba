# Data package initialization
