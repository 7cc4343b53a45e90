def adjust_learning_rate(init_learning_rate, step_num, log_objective, log_objective_prev,
                         overflow, log_lambda, learning_rate_prev, log_gradient_norm):
    raise ValueError("deliberate candidate bug")
