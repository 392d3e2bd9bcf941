package org.zalando.catwatch.backend.web;

import java.util.Collection;

import org.springframework.beans.factory.annotation.Autowired;
import org.springframework.http.HttpStatus;
import org.springframework.http.ResponseEntity;
import org.springframework.web.bind.annotation.ExceptionHandler;
import org.springframework.web.bind.annotation.RequestMapping;
import org.springframework.web.bind.annotation.RequestMethod;
import org.springframework.web.bind.annotation.RequestParam;
import org.springframework.web.bind.annotation.RestController;

import org.zalando.catwatch.backend.model.Contributor;
import org.zalando.catwatch.backend.repo.ProjectRepository;
import org.zalando.catwatch.backend.util.Constants;

@RestController
public class ContributorsRestController {

    @Autowired
    private ProjectRepository repository;

    @RequestMapping(value = "/contributors", method = RequestMethod.GET, produces = "application/json")
    public ResponseEntity<Collection<Contributor>> contributorsGet(
            @RequestParam(value = Constants.API_REQUEST_PARAM_ORGANIZATIONS) String organizations,
            @RequestParam(value = Constants.API_REQUEST_PARAM_LIMIT, required = false) Integer limit,
            @RequestParam(value = Constants.API_REQUEST_PARAM_OFFSET, required = false) Integer offset,
            @RequestParam(value = Constants.API_REQUEST_PARAM_Q, required = false) String query) {
        if (organizations.isEmpty()) {
            throw new IllegalArgumentException("at least one organization is required");
        }
        return new ResponseEntity<>(repository.findContributors(organizations, null, null, query), HttpStatus.OK);
    }

    @ExceptionHandler(IllegalArgumentException.class)
    public ResponseEntity<String> badRequest(IllegalArgumentException e) {
        return new ResponseEntity<>(e.getMessage(), HttpStatus.BAD_REQUEST);
    }
}
