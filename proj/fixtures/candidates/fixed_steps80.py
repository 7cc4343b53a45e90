def num_steps(subproblem_index, overflow, log_lambda):
    return 80
