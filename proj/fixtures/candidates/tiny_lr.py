def adjust_learning_rate(init_learning_rate, step_num, log_objective, log_objective_prev,
                         overflow, log_lambda, learning_rate_prev, log_gradient_norm):
    # Far too small to spread the cluster apart: overflow never reaches target.
    return 1e-6
